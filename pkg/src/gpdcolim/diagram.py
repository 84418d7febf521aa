"""Strict diagrams of presented groupoids indexed by subset posets.

Only the functors along covers ``S < S+{i}`` are stored.  The functor for
a longer inclusion is the composite along the chain that adds the missing
elements in increasing order; :func:`check_strictness` certifies that the
choice of chain does not matter.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field

from .errors import FunctorError, PresentationError, SchemaError, UnverifiedDiagram, ViewError
from .groupoid import (FunctorPresentation, Generator, GroupoidPresentation, Relation,
                       compose_functors, format_letter, identity_functor, parse_letter,
                       validate_functor)
from .poset import PosetView, Subset, canonical_chain, covers, diamonds
from .wordproblem import Distinct, Equal, word_equal


@dataclass
class Diagram:
    view: PosetView
    groupoids: dict
    functors: dict
    _between: dict = field(default_factory=dict, compare=False, repr=False)
    _strictness: object = field(default=None, compare=False, repr=False)

    def __post_init__(self):
        for s in self.view:
            if s not in self.groupoids:
                raise SchemaError(f"no groupoid for {s}")
        extra = [s for s in self.groupoids if s not in self.view]
        if extra:
            raise SchemaError(f"groupoids given outside the view: {', '.join(map(str, extra))}")
        wanted = {(c.lower, c.upper) for c in covers(self.view)}
        for s, t in sorted(wanted, key=lambda p: (p[0].key, p[1].key)):
            if (s, t) not in self.functors:
                raise SchemaError(f"missing functor for cover {s}<{t}")
            f = self.functors[(s, t)]
            if f.domain != self.groupoids[s] or f.codomain != self.groupoids[t]:
                raise SchemaError(f"functor for {s}<{t} has the wrong domain or codomain")
        for key in self.functors:
            if key not in wanted:
                raise SchemaError(f"functor given for non-cover {key[0]}<{key[1]}")

    @property
    def n(self) -> int:
        return self.view.n

    def __getitem__(self, s: Subset) -> GroupoidPresentation:
        return self.groupoids[s]


@dataclass
class StrictnessFailure:
    diamond: tuple
    kind: str          # "object-mismatch" | "generator-verdict"
    detail: str


@dataclass
class StrictnessReport:
    failures: list
    unknowns: list
    fuel_spent: int = 0

    @property
    def verified(self) -> bool:
        return not self.failures and not self.unknowns


def functor_between(d: Diagram, s: Subset, t: Subset) -> FunctorPresentation:
    """``Phi(s) -> Phi(t)`` along the canonical increasing chain."""
    if s not in d.view or t not in d.view:
        raise ViewError(f"{s} or {t} is not in the view {d.view.describe()}")
    if not s.issubset(t):
        raise ViewError(f"{s} and {t} are not comparable")
    key = (s, t)
    if key in d._between:
        return d._between[key]
    if s == t:
        out = identity_functor(d.groupoids[s])
    else:
        chain = canonical_chain(s, t)
        for x in chain:
            if x not in d.view:
                raise ViewError(f"canonical chain from {s} to {t} leaves the view at {x}")
        out = d.functors[(chain[0], chain[1])]
        for a, b in zip(chain[1:], chain[2:]):
            out = compose_functors(out, d.functors[(a, b)])
    d._between[key] = out
    return out


def check_strictness(d: Diagram, fuel: int = 10000) -> StrictnessReport:
    """Compare the two composites around every diamond of covers."""
    failures, unknowns, spent = [], [], 0
    for dia in diamonds(d.view):
        s, t1, t2, w = dia
        p1 = compose_functors(d.functors[(s, t1)], d.functors[(t1, w)])
        p2 = compose_functors(d.functors[(s, t2)], d.functors[(t2, w)])
        if p1.object_map != p2.object_map:
            bad = [x for x in p1.object_map if p1.object_map[x] != p2.object_map[x]]
            failures.append(StrictnessFailure(dia, "object-mismatch",
                                              f"objects {bad} land differently via {t1} and {t2}"))
            continue
        for gid in sorted(p1.generator_map):
            w1, w2 = p1.generator_map[gid], p2.generator_map[gid]
            verdict = word_equal(d.groupoids[w], w1, w2, fuel)
            if isinstance(verdict, Equal):
                continue
            if isinstance(verdict, Distinct):
                failures.append(StrictnessFailure(dia, "generator-verdict", f"{gid}: {w1} vs {w2}: {verdict}"))
            else:
                spent += verdict.fuel_spent
                unknowns.append(StrictnessFailure(dia, "generator-verdict", f"{gid}: {w1} vs {w2}: {verdict}"))
    report = StrictnessReport(failures, unknowns, spent)
    d._strictness = report
    return report


def ensure_strict(d: Diagram, fuel: int = 10000, force: bool = False) -> StrictnessReport:
    report = d._strictness if d._strictness is not None else check_strictness(d, fuel)
    if not report.verified and not force:
        first = (report.failures or report.unknowns)[0]
        raise UnverifiedDiagram(
            f"diagram is not verified strict ({len(report.failures)} failures, "
            f"{len(report.unknowns)} undecided); first: {first.kind} at "
            f"{'/'.join(map(str, first.diamond))}: {first.detail}")
    return report


def validate_diagram(d: Diagram, fuel: int = 10000, strict: bool = False) -> list[str]:
    """Validate every cover functor; returns warnings, raises on errors."""
    warnings = []
    for (s, t), f in sorted(d.functors.items(), key=lambda kv: (kv[0][0].key, kv[0][1].key)):
        try:
            warnings += [f"{s}<{t}: {w}" for w in validate_functor(f, fuel, strict)]
        except FunctorError as exc:
            raise FunctorError(f"functor {s}<{t}: {exc}") from None
    return warnings


def restrict(d: Diagram, sub: PosetView) -> Diagram:
    if not sub.issubview(d.view):
        raise ViewError(f"{sub.describe()} is not contained in {d.view.describe()}")
    groupoids = {s: d.groupoids[s] for s in sub}
    functors = {(c.lower, c.upper): functor_between(d, c.lower, c.upper) for c in covers(sub)}
    out = Diagram(sub, groupoids, functors)
    for (s, t), f in d._between.items():
        if s in sub and t in sub:
            out._between[(s, t)] = f
    if d._strictness is not None and d._strictness.verified:
        out._strictness = StrictnessReport([], [], 0)
    return out


# -- serialization ------------------------------------------------------------

def _view_to_json(view: PosetView):
    if view.kind == "full":
        return "full"
    if view.kind == "rel":
        return {"rel": {"V": list(view.v.members), "U": list(view.u.members)}}
    if view.kind == "codim":
        return {"codim": view.k}
    return {"explicit": [str(s) for s in view.members]}


def _view_from_json(n: int, data) -> PosetView:
    try:
        if data == "full":
            return PosetView.full(n)
        if isinstance(data, dict) and len(data) == 1:
            (kind, body), = data.items()
            if kind == "rel":
                return PosetView.rel(Subset.of(n, body["V"]), Subset.of(n, body["U"]))
            if kind == "codim":
                return PosetView.codim(n, int(body))
            if kind == "explicit":
                return PosetView.of(n, [Subset.parse(n, s) for s in body])
    except (ViewError, KeyError, TypeError, ValueError) as exc:
        raise SchemaError(f"view: {exc}") from None
    raise SchemaError(f"view: expected 'full', {{'rel': ...}}, {{'codim': k}} or {{'explicit': [...]}}, got {data!r}")


def groupoid_to_json(g: GroupoidPresentation) -> dict:
    return {
        "objects": list(g.objects),
        "generators": [{"id": e.id, "src": e.src, "dst": e.dst} for e in g.generators],
        "relations": [{"lhs": [format_letter(x) for x in r.lhs.letters], "lhs_start": r.lhs.start,
                       "rhs": [format_letter(x) for x in r.rhs.letters], "rhs_start": r.rhs.start}
                      for r in g.relations],
    }


def _require(obj, key, where, kind=None):
    if not isinstance(obj, dict) or key not in obj:
        raise SchemaError(f"{where}: missing field '{key}'")
    value = obj[key]
    if kind is not None and not isinstance(value, kind):
        raise SchemaError(f"{where}.{key}: expected {kind.__name__}")
    return value


def groupoid_from_json(data, where: str = "groupoid") -> GroupoidPresentation:
    objects = _require(data, "objects", where, list)
    gens = []
    for i, e in enumerate(_require(data, "generators", where, list)):
        at = f"{where}.generators[{i}]"
        gens.append(Generator(str(_require(e, "id", at)), str(_require(e, "src", at)), str(_require(e, "dst", at))))
    try:
        base = GroupoidPresentation([str(x) for x in objects], gens)
    except PresentationError as exc:
        raise SchemaError(f"{where}: {exc}") from None
    rels = []
    for i, r in enumerate(data.get("relations", [])):
        at = f"{where}.relations[{i}]"
        try:
            lhs = base.word(str(_require(r, "lhs_start", at)), [parse_letter(x) for x in _require(r, "lhs", at, list)])
            rhs = base.word(str(_require(r, "rhs_start", at)), [parse_letter(x) for x in _require(r, "rhs", at, list)])
        except PresentationError as exc:
            raise SchemaError(f"{at}: {exc}") from None
        rels.append(Relation(lhs, rhs))
    try:
        return GroupoidPresentation(base.objects, gens, rels)
    except PresentationError as exc:
        raise SchemaError(f"{where}: {exc}") from None


def functor_to_json(f: FunctorPresentation) -> dict:
    return {
        "objects": dict(f.object_map),
        "generators": {gid: {"start": w.start, "letters": [format_letter(x) for x in w.letters]}
                       for gid, w in f.generator_map.items()},
    }


def functor_from_json(data, dom, cod, where: str = "functor") -> FunctorPresentation:
    objects = _require(data, "objects", where, dict)
    gens = {}
    for gid, img in _require(data, "generators", where, dict).items():
        at = f"{where}.generators.{gid}"
        try:
            gens[gid] = cod.word(str(_require(img, "start", at)), [parse_letter(x) for x in _require(img, "letters", at, list)])
        except PresentationError as exc:
            raise SchemaError(f"{at}: {exc}") from None
    try:
        return FunctorPresentation(dom, cod, {str(k): str(v) for k, v in objects.items()}, gens)
    except FunctorError as exc:
        raise SchemaError(f"{where}: {exc}") from None


def to_json(d: Diagram) -> dict:
    return {
        "ground_n": d.n,
        "view": _view_to_json(d.view),
        "groupoids": {str(s): groupoid_to_json(d.groupoids[s]) for s in d.view},
        "functors": {f"{s}<{t}": functor_to_json(d.functors[(s, t)])
                     for s, t in sorted(d.functors, key=lambda p: (p[0].key, p[1].key))},
    }


def from_json(data) -> Diagram:
    if not isinstance(data, dict):
        raise SchemaError("top level: expected an object")
    n = _require(data, "ground_n", "top level", int)
    if n < 1:
        raise SchemaError("ground_n: must be >= 1")
    view = _view_from_json(n, _require(data, "view", "top level"))
    groupoids = {}
    for lit, body in _require(data, "groupoids", "top level", dict).items():
        try:
            s = Subset.parse(n, lit)
        except ViewError as exc:
            raise SchemaError(f"groupoids.{lit}: {exc}") from None
        if str(s) != lit.replace(" ", ""):
            raise SchemaError(f"groupoids.{lit}: subset literal must be written as {s}")
        groupoids[s] = groupoid_from_json(body, f"groupoids.{lit}")
    for s in view:
        if s not in groupoids:
            raise SchemaError(f"groupoids: no groupoid for {s}")
    functors = {}
    fdata = _require(data, "functors", "top level", dict)
    for lit, body in fdata.items():
        if "<" not in lit:
            raise SchemaError(f"functors.{lit}: key must look like 'S<T'")
        a, b = lit.split("<", 1)
        try:
            s, t = Subset.parse(n, a), Subset.parse(n, b)
        except ViewError as exc:
            raise SchemaError(f"functors.{lit}: {exc}") from None
        if s not in groupoids or t not in groupoids:
            raise SchemaError(f"functors.{lit}: endpoint groupoid missing")
        functors[(s, t)] = functor_from_json(body, groupoids[s], groupoids[t], f"functors.{lit}")
    for c in covers(view):
        if (c.lower, c.upper) not in functors:
            raise SchemaError(f"functors: missing functor for cover {c.lower}<{c.upper}")
    return Diagram(view, groupoids, functors)


def save(d: Diagram) -> str:
    return json.dumps(to_json(d), indent=2, sort_keys=True, ensure_ascii=False) + "\n"


def load(text: str) -> Diagram:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise SchemaError(f"line {exc.lineno}, column {exc.colno}: {exc.msg}") from None
    return from_json(data)
