"""Comparing the colimit with the 2-colimit.

``equivalence_report`` certifies an equivalence through the injectivity
conditions, refutes one through differing invariants, and otherwise says
only that the invariants agree.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .colimit import colimit_presentation
from .descent import (DescentCategory, DescentObject, descent_from_functor, enumerate_cones,
                      functor_from_descent)
from .diagram import Diagram, ensure_strict, restrict
from .errors import FuelExhausted, SmithOverflowError, ViewError
from .finite import (FiniteFunctor, FiniteGroupoid, FunctorGroupoid, canonical_form, enumerate_functors,
                     functor_skeleton)
from .groupoid import FunctorPresentation, Word, mapping_cylinder, validate_functor
from .invariants import InvariantBundle, compare_bundles, invariant_bundle
from .poset import PosetView, Subset
from .setcolim import check_maincor, check_theorem_main
from .twocolim import grothendieck, two_colimit_presentation

GUARANTEED = "GuaranteedEquivalent"
AGREE = "InvariantsAgree"
DISTINGUISHED = "Distinguished"
INCONCLUSIVE = "Inconclusive"

EQUIVALENCE_INVARIANTS = ("components", "abelianizations")


def comparison_delta(d: Diagram, view: PosetView | None = None, fuel: int = 10000,
                     force: bool = False) -> FunctorPresentation:
    """The functor from the 2-colimit to the colimit.

    ``(S, x)`` goes to the class of ``x``, a lifted generator to its image
    under the colimit insertion, and every lambda arrow to an identity.
    """
    ensure_strict(d, fuel, force)
    col = colimit_presentation(d, view, force=True)
    two = two_colimit_presentation(d, view, force=True)
    gp = two.grothendieck
    cls = col.set_colimit.insertion
    objects = {label: cls[key] for key, label in gp.objects.items()}
    images = {}
    for (s, e), gid in gp.lifted.items():
        images[gid] = col.insertions[s].generator_map[e]
    for (s, t, x), gid in gp.lambda_arrows.items():
        images[gid] = Word.identity(cls[(s, x)])
    delta = FunctorPresentation(two.groupoid, col.groupoid, objects, images)
    validate_functor(delta, fuel)
    return delta


@dataclass
class EquivalenceReport:
    verdict: str
    detail: str
    conditions: list
    colim_invariants: InvariantBundle | None
    twocolim_invariants: InvariantBundle | None
    unknowns: list = field(default_factory=list)
    fuel_spent: int = 0
    witness: tuple | None = None

    def as_dict(self) -> dict:
        return {
            "verdict": self.verdict,
            "detail": self.detail,
            "conditions": [{"name": c.name(), "labels": c.labels, "holds": c.holds,
                            "witness": list(c.witness) if c.witness else None} for c in self.conditions],
            "colim": self.colim_invariants.as_dict() if self.colim_invariants else None,
            "twocolim": self.twocolim_invariants.as_dict() if self.twocolim_invariants else None,
            "witness": difference_to_json(self.witness) if self.witness else None,
            "unknowns": self.unknowns,
            "fuel_spent": self.fuel_spent,
        }


def difference_to_json(w) -> list:
    """``(name, a, b)`` from :func:`compare_bundles` as plain JSON values."""
    name, a, b = w
    if isinstance(a, tuple):
        a, b = [x.as_tuple() for x in a], [x.as_tuple() for x in b]
    return [name, a, b]


def equivalence_report(d: Diagram, fuel: int = 10000, full_battery: bool = False,
                       force: bool = False) -> EquivalenceReport:
    n = d.n
    if n < 2 or d.view != PosetView.full(n):
        raise ViewError("equivalence report needs a diagram over the full poset with n >= 2")
    strict = ensure_strict(d, fuel, force)
    unknowns = [f"{'/'.join(map(str, u.diamond))}: {u.detail}" for u in strict.unknowns]
    conditions = check_theorem_main(d, force=True) if full_battery else check_maincor(d, force=True)
    try:
        a = invariant_bundle(colimit_presentation(d, force=True).groupoid)
        b = invariant_bundle(two_colimit_presentation(d, force=True).groupoid)
    except (SmithOverflowError, FuelExhausted) as exc:
        return EquivalenceReport(INCONCLUSIVE, f"invariants could not be computed: {exc}", conditions,
                                 None, None, unknowns, strict.fuel_spent)
    diffs = compare_bundles(a, b, EQUIVALENCE_INVARIANTS)
    if diffs:
        name, x, y = diffs[0]
        return EquivalenceReport(DISTINGUISHED, f"{name} differ: colim {_show(x)} vs 2colim {_show(y)}",
                                 conditions, a, b, unknowns, strict.fuel_spent, diffs[0])
    if unknowns:
        return EquivalenceReport(INCONCLUSIVE, "strictness left undecided word problems", conditions,
                                 a, b, unknowns, strict.fuel_spent)
    if all(c.holds for c in conditions):
        battery = "theorem" if full_battery else "corollary"
        return EquivalenceReport(GUARANTEED, f"all {len(conditions)} conditions of the {battery} battery hold",
                                 conditions, a, b, unknowns, strict.fuel_spent)
    failed = [c.name() for c in conditions if not c.holds]
    return EquivalenceReport(AGREE, f"conditions {', '.join(failed)} fail but the invariants agree",
                             conditions, a, b, unknowns, strict.fuel_spent)


def _show(value):
    if isinstance(value, tuple):
        return "[" + ", ".join(map(str, value)) + "]"
    return str(value)


@dataclass
class TruncationReport:
    full: InvariantBundle
    truncated: InvariantBundle
    differences: list
    descent_classes: list = field(default_factory=list)   # (target name, full count, truncated count)

    @property
    def agree(self) -> bool:
        return not self.differences and all(a == b for _, a, b in self.descent_classes)


def descent_class_count(d: Diagram, h: FiniteGroupoid, view: PosetView | None = None, fuel: int = 10000,
                        method: str = "skeleton") -> int:
    """Number of isomorphism classes of descent data into ``h``."""
    if method == "descent":
        return DescentCategory(d, view, h, fuel, force=True, bucket="canonical").classification().class_count
    return functor_skeleton(grothendieck(d, view, force=True).groupoid, h, fuel).class_count


def truncation_check(d: Diagram, targets=(), fuel: int = 10000, force: bool = False,
                     method: str = "skeleton") -> TruncationReport:
    """Compare the 2-colimit over all proper subsets with the one over subsets of size >= n-3."""
    n = d.n
    if n < 3 or d.view != PosetView.full(n):
        raise ViewError("truncation check needs a diagram over the full poset with n >= 3")
    ensure_strict(d, fuel, force)
    view = PosetView.codim(n, n - 3)
    small = restrict(d, view)
    a = invariant_bundle(two_colimit_presentation(d, force=True).groupoid)
    b = invariant_bundle(two_colimit_presentation(small, force=True).groupoid)
    report = TruncationReport(a, b, compare_bundles(a, b, EQUIVALENCE_INVARIANTS))
    for h in targets:
        full_count = descent_class_count(d, h, None, fuel, method)
        trunc_count = descent_class_count(small, h, None, fuel, method)
        report.descent_classes.append((h.name, full_count, trunc_count))
    return report


@dataclass
class GammaKReport:
    n: int
    k: int
    faithful: bool
    full: bool
    essentially_surjective: bool
    classes: int
    truncated_classes: int
    counterexamples: list = field(default_factory=list)

    @property
    def expected(self) -> dict:
        return {"faithful": True, "full": self.k <= self.n - 2, "equivalence": self.k <= self.n - 3}

    @property
    def consistent(self) -> bool:
        """True when every property guaranteed for this ``k`` was verified."""
        exp = self.expected
        return (self.faithful and (self.full or not exp["full"])
                and ((self.full and self.essentially_surjective) or not exp["equivalence"]))


def _morphism_key(f: dict) -> tuple:
    return tuple((s.key, tuple(sorted(f[s].items()))) for s in sorted(f))


def gamma_k_properties(d: Diagram, h: FiniteGroupoid, k: int, fuel: int = 10000,
                       force: bool = False, method: str = "skeleton") -> GammaKReport:
    """Check the restriction functor from descent data over all proper subsets to
    descent data over the subsets of size >= k.

    In groupoids, faithful means injective on automorphism groups, full means
    additionally surjective on them and injective on isomorphism classes, and
    essentially surjective means every class is hit.

    ``method="descent"`` enumerates every descent datum on both sides.
    ``method="skeleton"`` works with one normalised functor per isomorphism
    class on the Grothendieck presentations (descent data correspond to such
    functors through J); it is exhaustive over classes and much faster.
    """
    n = d.n
    if not 0 <= k < n or d.view != PosetView.full(n):
        raise ViewError(f"gamma_k needs a diagram over the full poset and 0 <= k < n, got k={k}")
    if method not in ("skeleton", "descent"):
        raise ValueError(f"unknown method {method!r}")
    ensure_strict(d, fuel, force)
    cview = PosetView.codim(n, k)
    if method == "descent":
        rows, big_count, small_count = _gamma_rows_descent(d, h, cview, fuel)
    else:
        rows, big_count, small_count = _gamma_rows_skeleton(d, h, cview, fuel)

    faithful = full = True
    hit: dict = {}
    problems = []
    for ci, target, own_auts, image_count, target_auts in rows:
        if target is None:
            problems.append(f"class {ci}: restriction is not among the truncated data")
            faithful = full = False
            continue
        if target in hit:
            full = False
            problems.append(f"classes {hit[target]} and {ci} become isomorphic after truncation")
        hit[target] = ci
        if image_count != own_auts:
            faithful = False
            problems.append(f"class {ci}: distinct automorphisms restrict to the same one")
        if image_count != target_auts:
            full = False
            problems.append(f"class {ci}: {target_auts} truncated automorphisms, "
                            f"only {image_count} come from the full data")
    ess = len(hit) == small_count
    if not ess:
        problems.append(f"{small_count - len(hit)} truncated classes are not hit")
    return GammaKReport(n, k, faithful, full and faithful, ess, big_count, small_count, problems)


def _gamma_rows_descent(d, h, cview, fuel):
    big = DescentCategory(d, None, h, fuel, force=True, bucket="canonical")
    small = DescentCategory(d, cview, h, fuel, force=True, bucket="canonical")
    sview = small.ctx.view

    def gamma(X: DescentObject) -> DescentObject:
        return DescentObject({s: X.X[s] for s in sview}, {c: X.A[c] for c in small.ctx.covers})

    bc, sc = big.classification(), small.classification()
    index = {D.key(): i for i, D in enumerate(small.objects)}
    rows = []
    for ci, members in enumerate(bc.classes):
        j = index.get(gamma(big.objects[members[0]]).key())
        target = None if j is None else sc.class_of[j]
        images = {_morphism_key({s: f[s] for s in sview}) for f in bc.automorphisms[ci]}
        rows.append((ci, target, bc.aut_sizes[ci], len(images),
                     None if target is None else sc.aut_sizes[target]))
    return rows, bc.class_count, sc.class_count


def _gamma_rows_skeleton(d, h, cview, fuel):
    big_gp = grothendieck(d, force=True).groupoid
    small_gp = grothendieck(d, cview, force=True).groupoid
    big = functor_skeleton(big_gp, h, fuel)
    small = functor_skeleton(small_gp, h, fuel)
    index = small.index()
    objs = small_gp.objects
    gens = [e.id for e in small_gp.generators]
    rows = []
    for ci, F in enumerate(big.reps):
        G = FiniteFunctor({x: F.obj[x] for x in objs}, {e: F.gen[e] for e in gens})
        target = index.get(canonical_form(small.layout, h, G))
        images = {tuple(eta[x] for x in objs) for eta in big.automorphisms[ci]}
        rows.append((ci, target, len(big.automorphisms[ci]), len(images),
                     None if target is None else len(small.automorphisms[target])))
    return rows, big.class_count, small.class_count


def injectivize_diagram_b2(d: Diagram) -> Diagram:
    """Replace both side groupoids by mapping cylinders so that both functors
    out of ``Phi({})`` become injective on objects."""
    if d.view != PosetView.full(2):
        raise ViewError("injectivization is only provided over the proper subsets of {1,2}; "
                        "for larger n insert mapping cylinders by hand")
    e, one, two = Subset(2, 0), Subset.of(2, [1]), Subset.of(2, [2])
    h1, f1, _ = mapping_cylinder(d.functors[(e, one)])
    h2, f2, _ = mapping_cylinder(d.functors[(e, two)])
    return Diagram(d.view, {e: d.groupoids[e], one: h1, two: h2}, {(e, one): f1, (e, two): f2})


@dataclass
class OracleReport:
    """Hom-set counts into a finite target, computed on both sides of each
    representability statement."""

    target: str
    colim_functors: int
    strict_cones: int
    twocolim_classes: int
    twocolim_morphisms: int
    descent_classes: int
    descent_morphisms: int
    round_trip_failures: int

    @property
    def colim_ok(self) -> bool:
        return self.colim_functors == self.strict_cones

    @property
    def twocolim_ok(self) -> bool:
        return (self.twocolim_classes, self.twocolim_morphisms) == (self.descent_classes, self.descent_morphisms)

    @property
    def ok(self) -> bool:
        return self.colim_ok and self.twocolim_ok and self.round_trip_failures == 0

    def as_dict(self) -> dict:
        out = {k: getattr(self, k) for k in self.__dataclass_fields__}
        out.update(colim_ok=self.colim_ok, twocolim_ok=self.twocolim_ok, ok=self.ok)
        return out


def universal_property_report(d: Diagram, h: FiniteGroupoid, fuel: int = 10000,
                              force: bool = False) -> OracleReport:
    ensure_strict(d, fuel, force)
    col = colimit_presentation(d, force=True)
    two = two_colimit_presentation(d, force=True)
    desc = DescentCategory(d, None, h, fuel, force=True)
    functors = FunctorGroupoid(two.groupoid, h, fuel)
    fc, dc = functors.classification(), desc.classification()
    gp = two.grothendieck
    bad = sum(descent_from_functor(gp, functor_from_descent(gp, D)).key() != D.key() for D in desc.objects)
    bad += sum(functor_from_descent(gp, descent_from_functor(gp, F)).key() != F.key() for F in functors.objects)
    return OracleReport(h.name, len(enumerate_functors(col.groupoid, h, fuel)),
                        len(enumerate_cones(desc.ctx, fuel)), fc.class_count, fc.morphism_count,
                        dc.class_count, dc.morphism_count, bad)
