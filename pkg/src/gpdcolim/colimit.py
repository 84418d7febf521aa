"""The colimit of a diagram of groupoids, as a presentation.

Objects are the classes of the set colimit.  Every generator ``e`` of every
``Phi(S)`` contributes a generator ``S:e``; relations are the transported
relations of each ``Phi(S)`` plus, for each cover ``S < T``, the identity
``S:e = T:Phi(e)``.  The optional cleanup eliminates ``S:e`` whenever that
identity says it equals a single letter or an identity.
"""

from __future__ import annotations

from dataclasses import dataclass

from .diagram import Diagram, ensure_strict, functor_between
from .errors import ViewError
from .groupoid import (FunctorPresentation, Generator, GroupoidPresentation, Relation,
                       compose_functors, invert_letters, reduce_letters)
from .poset import PosetView, Subset, covers, partition_b
from .setcolim import SetColimit, set_colimit


def gen_label(s: Subset, e: str) -> str:
    return f"{s}:{e}"


@dataclass
class ColimitResult:
    groupoid: GroupoidPresentation
    insertions: dict          # Subset -> FunctorPresentation into the colimit
    view: PosetView
    set_colimit: SetColimit
    sources: dict             # colimit generator id -> (S, generator of Phi(S))


def colimit_presentation(d: Diagram, view: PosetView | None = None, cleanup: bool = True,
                         force: bool = False) -> ColimitResult:
    view = view or d.view
    ensure_strict(d, force=force)
    col = set_colimit(d, view, force=True)
    cls = col.insertion

    gens, sources = [], {}
    for s in view:
        g = d.groupoids[s]
        for e in g.generators:
            gid = gen_label(s, e.id)
            gens.append(Generator(gid, cls[(s, e.src)], cls[(s, e.dst)]))
            sources[gid] = (s, e.id)
    order = {gen.id: i for i, gen in enumerate(gens)}

    def lift(s, letters):
        return tuple((gen_label(s, gid), sign) for gid, sign in letters)

    transported = []
    for s in view:
        for rel in d.groupoids[s].relations:
            transported.append((cls[(s, rel.lhs.start)], lift(s, rel.lhs.letters), lift(s, rel.rhs.letters)))
    glue = []
    for c in covers(view):
        f = functor_between(d, c.lower, c.upper)
        for e in d.groupoids[c.lower].generators:
            img = f.generator_map[e.id]
            glue.append((cls[(c.lower, e.src)], ((gen_label(c.lower, e.id), 1),), lift(c.upper, img.letters)))

    subst: dict = {}

    def resolve(letters) -> tuple:
        out = []
        for gid, sign in letters:
            img = subst.get(gid)
            if img is None:
                out.append((gid, sign))
            else:
                out.extend(img if sign == 1 else invert_letters(img))
        return reduce_letters(out)

    if cleanup:
        changed = True
        while changed:
            changed = False
            for _, lhs, rhs in glue:
                a, b = resolve(lhs), resolve(rhs)
                if a == b:
                    continue
                if len(a) == 1 and len(b) <= 1:
                    victim, keep = a, b
                    if len(b) == 1 and order[b[0][0]] > order[a[0][0]]:
                        victim, keep = b, a
                elif len(b) == 1 and not a:
                    victim, keep = b, a
                else:
                    continue
                gid, sign = victim[0]
                if any(x[0] == gid for x in keep):
                    continue
                value = keep if sign == 1 else invert_letters(keep)
                subst[gid] = value
                for other in list(subst):
                    subst[other] = resolve(subst[other])
                changed = True

    kept = [g for g in gens if g.id not in subst]
    base = GroupoidPresentation(col.classes, kept)
    relations, seen = [], set()
    for start, lhs, rhs in transported + glue:
        a, b = resolve(lhs), resolve(rhs)
        if reduce_letters(a + invert_letters(b)) == ():
            continue
        key = (start, a, b)
        if key in seen:
            continue
        seen.add(key)
        relations.append(Relation(base.word(start, a), base.word(start, b)))
    groupoid = GroupoidPresentation(col.classes, kept, relations)

    insertions = {}
    for s in view:
        g = d.groupoids[s]
        insertions[s] = FunctorPresentation(
            g, groupoid, {x: cls[(s, x)] for x in g.objects},
            {e.id: groupoid.word(cls[(s, e.src)], resolve(((gen_label(s, e.id), 1),))) for e in g.generators})
    return ColimitResult(groupoid, insertions, view, col, {g.id: sources[g.id] for g in kept})


def induced_functor(result: ColimitResult, target: GroupoidPresentation, cocone: dict) -> FunctorPresentation:
    """The functor ``colim -> target`` determined by a cocone ``S -> (Phi(S) -> target)``."""
    col = result.set_colimit
    objects = {}
    for label in col.classes:
        s, x = col.representative(label)
        objects[label] = cocone[s].object_map[x]
    images = {}
    for gid, (s, e) in result.sources.items():
        images[gid] = cocone[s].generator_map[e]
    return FunctorPresentation(result.groupoid, target, objects, images)


def span_diagram(corner: GroupoidPresentation, left: GroupoidPresentation, right: GroupoidPresentation,
                 to_left: FunctorPresentation, to_right: FunctorPresentation) -> Diagram:
    """The span ``left <- corner -> right`` as a diagram over the proper subsets of {1,2}."""
    e, one, two = Subset(2, 0), Subset.of(2, [1]), Subset.of(2, [2])
    return Diagram(PosetView.full(2), {e: corner, one: left, two: right},
                   {(e, one): to_left, (e, two): to_right})


@dataclass
class DecompositionReport:
    direct: object             # InvariantBundle
    decomposed: object
    compared: tuple            # names of compared invariants
    agree: bool
    differences: list


def pushout_decomposition_colim(d: Diagram, fuel: int = 10000, force: bool = False) -> DecompositionReport:
    """Compare ``colim`` over the full poset with the pushout of
    ``Phi({1..n-1}) <- colim over b(n-1) -> colim over b'(n-1)``."""
    from .invariants import compare_bundles, invariant_bundle

    n = d.n
    if n < 2 or d.view != PosetView.full(n):
        raise ViewError("pushout decomposition needs a diagram over the full poset with n >= 2")
    ensure_strict(d, fuel, force)
    lower, upper, top = partition_b(n)
    direct = colimit_presentation(d, force=True)
    low = colimit_presentation(d, lower, force=True)
    up = colimit_presentation(d, upper, force=True)
    to_top = induced_functor(low, d.groupoids[top], {s: functor_between(d, s, top) for s in lower})
    to_up = induced_functor(low, up.groupoid, {
        s: compose_functors(functor_between(d, s, s.add(n)), up.insertions[s.add(n)]) for s in lower})
    span = span_diagram(low.groupoid, d.groupoids[top], up.groupoid, to_top, to_up)
    pushout = colimit_presentation(span, force=True)
    a, b = invariant_bundle(direct.groupoid), invariant_bundle(pushout.groupoid)
    names = ("objects", "components", "abelianizations")
    diffs = compare_bundles(a, b, names)
    return DecompositionReport(a, b, names, not diffs, diffs)

