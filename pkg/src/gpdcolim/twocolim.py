"""Grothendieck construction and the 2-colimit presentation.

Objects of the Grothendieck presentation are pairs ``(S, x)`` written
``"S:x"``.  Generators are the lifted generators ``"S:e"`` followed by one
``lambda`` arrow ``"lam[S<T]:x"`` per cover and object of ``Phi(S)``.  A
groupoid presentation inverts every generator, so the same data presents
the 2-colimit.
"""

from __future__ import annotations

from dataclasses import dataclass

from .diagram import Diagram, ensure_strict, functor_between
from .errors import ViewError
from .groupoid import FunctorPresentation, Generator, GroupoidPresentation, Relation, Word, make_functor
from .poset import PosetView, Subset, covers, diamonds, partition_b


def obj_label(s: Subset, x) -> str:
    return f"{s}:{x}"


def lifted_label(s: Subset, e: str) -> str:
    return f"{s}:{e}"


def lambda_label(s: Subset, t: Subset, x) -> str:
    return f"lam[{s}<{t}]:{x}"


@dataclass
class GrothendieckPresentation:
    groupoid: GroupoidPresentation
    view: PosetView
    objects: dict            # (S, x) -> object id
    lifted: dict             # (S, e) -> generator id
    lambda_arrows: dict      # (S, T, x) -> generator id


def grothendieck(d: Diagram, view: PosetView | None = None, force: bool = False) -> GrothendieckPresentation:
    view = view or d.view
    if not view.issubview(d.view):
        raise ViewError(f"{view.describe()} is not inside {d.view.describe()}")
    ensure_strict(d, force=force)
    objects, lifted, lams = {}, {}, {}
    gens = []
    for s in view:
        for x in d.groupoids[s].objects:
            objects[(s, x)] = obj_label(s, x)
    for s in view:
        for e in d.groupoids[s].generators:
            gid = lifted_label(s, e.id)
            lifted[(s, e.id)] = gid
            gens.append(Generator(gid, objects[(s, e.src)], objects[(s, e.dst)]))
    cover_list = covers(view)
    for c in cover_list:
        f = functor_between(d, c.lower, c.upper)
        for x in d.groupoids[c.lower].objects:
            gid = lambda_label(c.lower, c.upper, x)
            lams[(c.lower, c.upper, x)] = gid
            gens.append(Generator(gid, objects[(c.lower, x)], objects[(c.upper, f.object_map[x])]))
    base = GroupoidPresentation(tuple(objects.values()), gens)

    def lift(s, w: Word) -> Word:
        return base.word(objects[(s, w.start)], [(lifted[(s, g)], sign) for g, sign in w.letters])

    relations = []
    for s in view:
        for rel in d.groupoids[s].relations:
            relations.append(Relation(lift(s, rel.lhs), lift(s, rel.rhs)))
    for c in cover_list:
        s, t = c.lower, c.upper
        f = functor_between(d, s, t)
        for e in d.groupoids[s].generators:
            start = objects[(s, e.src)]
            lhs = base.word(start, [(lifted[(s, e.id)], 1), (lams[(s, t, e.dst)], 1)])
            img = lift(t, f.generator_map[e.id])
            rhs = base.word(start, ((lams[(s, t, e.src)], 1),) + img.letters)
            relations.append(Relation(lhs, rhs))
    for s, t1, t2, w in diamonds(view):
        f1, f2 = functor_between(d, s, t1), functor_between(d, s, t2)
        for x in d.groupoids[s].objects:
            start = objects[(s, x)]
            lhs = base.word(start, [(lams[(s, t1, x)], 1), (lams[(t1, w, f1.object_map[x])], 1)])
            rhs = base.word(start, [(lams[(s, t2, x)], 1), (lams[(t2, w, f2.object_map[x])], 1)])
            relations.append(Relation(lhs, rhs))
    return GrothendieckPresentation(GroupoidPresentation(base.objects, gens, relations), view, objects, lifted, lams)


@dataclass
class TwoColimitResult:
    groupoid: GroupoidPresentation
    insertions: dict                      # Subset -> FunctorPresentation (L_S)
    grothendieck: GrothendieckPresentation


def two_colimit_presentation(d: Diagram, view: PosetView | None = None, force: bool = False) -> TwoColimitResult:
    gp = grothendieck(d, view, force)
    g = gp.groupoid
    insertions = {}
    for s in gp.view:
        phi = d.groupoids[s]
        insertions[s] = make_functor(
            phi, g, {x: gp.objects[(s, x)] for x in phi.objects},
            {e.id: [(gp.lifted[(s, e.id)], 1)] for e in phi.generators})
    return TwoColimitResult(g, insertions, gp)


def lambda_path(gp: GrothendieckPresentation, d: Diagram, chain, x) -> Word:
    """The composite of lambda arrows along a chain of covers, starting at ``(chain[0], x)``."""
    letters = []
    cur = x
    for a, b in zip(chain, chain[1:]):
        letters.append((gp.lambda_arrows[(a, b, cur)], 1))
        cur = functor_between(d, a, b).object_map[cur]
    return gp.groupoid.word(gp.objects[(chain[0], x)], letters)


def pushout_decomposition_2colim(d: Diagram, fuel: int = 10000, force: bool = False):
    """Compare the 2-colimit over the full poset with the 2-pushout of
    ``Phi({1..n-1}) <- 2colim over b(n-1) -> 2colim over b'(n-1)``."""
    from .colimit import DecompositionReport, span_diagram
    from .invariants import compare_bundles, invariant_bundle

    n = d.n
    if n < 2 or d.view != PosetView.full(n):
        raise ViewError("pushout decomposition needs a diagram over the full poset with n >= 2")
    ensure_strict(d, fuel, force)
    lower, upper, top = partition_b(n)
    direct = two_colimit_presentation(d, force=True)
    low = grothendieck(d, lower, force=True)
    up = grothendieck(d, upper, force=True)
    corner = low.groupoid

    top_g = d.groupoids[top]
    objs, gens = {}, {}
    for (s, x), label in low.objects.items():
        objs[label] = functor_between(d, s, top).object_map[x]
    for (s, e), gid in low.lifted.items():
        gens[gid] = functor_between(d, s, top).generator_map[e]
    for (s, t, x), gid in low.lambda_arrows.items():
        gens[gid] = Word.identity(objs[low.objects[(s, x)]])
    to_top = FunctorPresentation(corner, top_g, objs, gens)

    objs, gens = {}, {}
    for (s, x), label in low.objects.items():
        splus = s.add(n)
        objs[label] = up.objects[(splus, functor_between(d, s, splus).object_map[x])]
    for (s, e), gid in low.lifted.items():
        splus = s.add(n)
        img = functor_between(d, s, splus).generator_map[e]
        gens[gid] = up.groupoid.word(up.objects[(splus, img.start)],
                                     [(up.lifted[(splus, g)], sign) for g, sign in img.letters])
    for (s, t, x), gid in low.lambda_arrows.items():
        splus = s.add(n)
        y = functor_between(d, s, splus).object_map[x]
        gens[gid] = up.groupoid.generator_word(up.lambda_arrows[(splus, t.add(n), y)])
    to_up = FunctorPresentation(corner, up.groupoid, objs, gens)

    span = span_diagram(corner, top_g, up.groupoid, to_top, to_up)
    pushout = two_colimit_presentation(span, force=True)
    a, b = invariant_bundle(direct.groupoid), invariant_bundle(pushout.groupoid)
    names = ("components", "abelianizations")
    diffs = compare_bundles(a, b, names)
    return DecompositionReport(a, b, names, not diffs, diffs)
