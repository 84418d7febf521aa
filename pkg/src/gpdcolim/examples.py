"""Small groupoids and the built-in diagrams ``s1`` and ``s0-collapse``."""

from __future__ import annotations

from .diagram import Diagram
from .groupoid import Generator, GroupoidPresentation, Relation, make_functor
from .poset import PosetView, Subset


def discrete(*objects) -> GroupoidPresentation:
    return GroupoidPresentation(objects)


def point(name: str = "*") -> GroupoidPresentation:
    return GroupoidPresentation((name,))


def interval(a: str, b: str, e: str) -> GroupoidPresentation:
    """Two objects joined by one arrow ``e: a -> b``."""
    return GroupoidPresentation((a, b), (Generator(e, a, b),))


def cyclic(m: int, obj: str = "*", gen: str = "t") -> GroupoidPresentation:
    """One object with ``t^m = 1`` (``m = 0`` gives the integers)."""
    g = GroupoidPresentation((obj,), (Generator(gen, obj, obj),))
    if m == 0:
        return g
    lhs = g.word(obj, [(gen, 1)] * m)
    return GroupoidPresentation(g.objects, g.generators, (Relation(lhs, g.word(obj)),))


def s1() -> Diagram:
    """Two intervals glued at both ends: the circle covered by two arcs."""
    n = 2
    e, one, two = Subset(n, 0), Subset.of(n, [1]), Subset.of(n, [2])
    corner = discrete("c", "d")
    g1, g2 = interval("a1", "b1", "e1"), interval("a2", "b2", "e2")
    return Diagram(PosetView.full(n), {e: corner, one: g1, two: g2}, {
        (e, one): make_functor(corner, g1, {"c": "a1", "d": "b1"}),
        (e, two): make_functor(corner, g2, {"c": "a2", "d": "b2"}),
    })


def s0_collapse() -> Diagram:
    """Two points, each side collapsing them to one point."""
    n = 2
    e, one, two = Subset(n, 0), Subset.of(n, [1]), Subset.of(n, [2])
    corner = discrete("c", "d")
    p1, p2 = point("p1"), point("p2")
    return Diagram(PosetView.full(n), {e: corner, one: p1, two: p2}, {
        (e, one): make_functor(corner, p1, {"c": "p1", "d": "p1"}),
        (e, two): make_functor(corner, p2, {"c": "p2", "d": "p2"}),
    })


BUILTIN = {"s1": s1, "s0-collapse": s0_collapse}


def extend_by_identities(d: Diagram, top: GroupoidPresentation | None = None, top_maps: dict | None = None) -> Diagram:
    """Lift a diagram over the proper subsets of {1,2} to the proper subsets of {1,2,3}.

    ``S`` and ``S+{3}`` carry the same groupoid joined by the identity.  The
    new element ``{1,2}`` carries ``top`` (by default the colimit of ``d``)
    with the given functors from ``Phi({1})`` and ``Phi({2})`` (by default the
    colimit insertions).
    """
    from .colimit import colimit_presentation
    from .groupoid import identity_functor

    if d.view != PosetView.full(2):
        raise ValueError("extension is defined for diagrams over the full poset on {1,2}")
    if top is None:
        res = colimit_presentation(d)
        top = res.groupoid
        top_maps = {1: res.insertions[Subset.of(2, [1])], 2: res.insertions[Subset.of(2, [2])]}
    n = 3

    def up(s: Subset) -> Subset:
        return Subset.of(n, s.members)

    groupoids, functors = {}, {}
    for s, g in d.groupoids.items():
        groupoids[up(s)] = g
        groupoids[up(s).add(3)] = g
        functors[(up(s), up(s).add(3))] = identity_functor(g)
    for (s, t), f in d.functors.items():
        functors[(up(s), up(t))] = f
        functors[(up(s).add(3), up(t).add(3))] = f
    full12 = Subset.of(n, [1, 2])
    groupoids[full12] = top
    functors[(Subset.of(n, [1]), full12)] = top_maps[1]
    functors[(Subset.of(n, [2]), full12)] = top_maps[2]
    return Diagram(PosetView.full(n), groupoids, functors)
