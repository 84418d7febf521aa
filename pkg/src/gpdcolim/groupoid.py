"""Finitely presented groupoids, words in their generators, and functors.

A presentation lists objects, generator arrows between them and relations
``lhs = rhs`` between parallel words.  Words are paths read left to right:
the first letter leaves ``start``.  A letter ``(e, -1)`` traverses the
generator ``e`` backwards.  The empty word is the identity at ``start``.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Mapping, Sequence

from .errors import FunctorError, PresentationError
from .unionfind import UnionFind

Letter = tuple  # (gen_id, +1 | -1)


def format_letter(letter: Letter) -> str:
    gen, sign = letter
    return gen if sign == 1 else f"{gen}^-1"


def parse_letter(text: str) -> Letter:
    text = text.strip()
    if text.endswith("^-1"):
        gen = text[:-3]
        sign = -1
    else:
        gen, sign = text, 1
    if not gen or "^" in gen:
        raise PresentationError(f"bad signed generator {text!r}")
    return (gen, sign)


def reduce_letters(letters: Iterable[Letter]) -> tuple:
    """Cancel adjacent ``g g^-1`` and ``g^-1 g`` pairs."""
    out: list = []
    for gen, sign in letters:
        if out and out[-1][0] == gen and out[-1][1] == -sign:
            out.pop()
        else:
            out.append((gen, sign))
    return tuple(out)


def invert_letters(letters: Sequence[Letter]) -> tuple:
    return tuple((gen, -sign) for gen, sign in reversed(letters))


@dataclass(frozen=True)
class Generator:
    id: str
    src: str
    dst: str


@dataclass(frozen=True)
class Word:
    start: str
    end: str
    letters: tuple = ()

    @classmethod
    def identity(cls, obj: str) -> "Word":
        return cls(obj, obj, ())

    def is_identity(self) -> bool:
        return not self.letters

    def __len__(self):
        return len(self.letters)

    def __str__(self):
        if not self.letters:
            return f"id[{self.start}]"
        return " ".join(format_letter(x) for x in self.letters)


@dataclass(frozen=True)
class Relation:
    lhs: Word
    rhs: Word


@dataclass(frozen=True)
class GroupoidPresentation:
    objects: tuple
    generators: tuple = ()
    relations: tuple = ()

    def __post_init__(self):
        object.__setattr__(self, "objects", tuple(self.objects))
        object.__setattr__(self, "generators", tuple(self.generators))
        object.__setattr__(self, "relations", tuple(self.relations))
        _check_presentation(self)

    @cached_property
    def _gens(self) -> dict:
        return {g.id: g for g in self.generators}

    @cached_property
    def _objset(self) -> frozenset:
        return frozenset(self.objects)

    @cached_property
    def adjacency(self) -> dict:
        """object -> list of (gen_id, other endpoint, orientation leaving object)."""
        adj: dict = {x: [] for x in self.objects}
        for g in self.generators:
            adj[g.src].append((g.id, g.dst, 1))
            if g.dst != g.src:
                adj[g.dst].append((g.id, g.src, -1))
        return adj

    def has_object(self, x) -> bool:
        return x in self._objset

    def gen(self, gen_id: str) -> Generator:
        try:
            return self._gens[gen_id]
        except KeyError:
            raise PresentationError(f"unknown generator {gen_id!r}") from None

    def has_gen(self, gen_id: str) -> bool:
        return gen_id in self._gens

    def letter_ends(self, letter: Letter) -> tuple:
        g = self.gen(letter[0])
        return (g.src, g.dst) if letter[1] == 1 else (g.dst, g.src)

    def word(self, start: str, letters: Iterable = ()) -> Word:
        """Build and validate a word; letters may be tuples or strings like ``"e^-1"``."""
        if start not in self._objset:
            raise PresentationError(f"word starts at unknown object {start!r}")
        parsed = tuple(parse_letter(x) if isinstance(x, str) else (x[0], int(x[1]))
                       for x in letters)
        cur = start
        for pos, letter in enumerate(parsed):
            if letter[1] not in (1, -1):
                raise PresentationError(f"orientation must be +1 or -1 in {letter!r}")
            src, dst = self.letter_ends(letter)
            if src != cur:
                raise PresentationError(
                    f"letter {pos} ({format_letter(letter)}) leaves {src!r}, "
                    f"but the word is at {cur!r}")
            cur = dst
        return Word(start, cur, parsed)

    def generator_word(self, gen_id: str, sign: int = 1) -> Word:
        g = self.gen(gen_id)
        return Word(g.src, g.dst, ((gen_id, 1),)) if sign == 1 else Word(g.dst, g.src, ((gen_id, -1),))

    def check_word(self, w: Word) -> None:
        built = self.word(w.start, w.letters)
        if built.end != w.end:
            raise PresentationError(f"word {w} claims to end at {w.end!r} but ends at {built.end!r}")

    def summary(self) -> str:
        return f"{len(self.objects)} objects, {len(self.generators)} generators, {len(self.relations)} relations"


def _check_presentation(g: GroupoidPresentation) -> None:
    if len(set(g.objects)) != len(g.objects):
        raise PresentationError("duplicate object ids")
    seen = set()
    objs = set(g.objects)
    for gen in g.generators:
        if gen.id in seen:
            raise PresentationError(f"duplicate generator id {gen.id!r}")
        seen.add(gen.id)
        if gen.src not in objs or gen.dst not in objs:
            raise PresentationError(f"generator {gen.id!r} has a dangling endpoint")
    for i, rel in enumerate(g.relations):
        for side in (rel.lhs, rel.rhs):
            g.check_word(side)
        if (rel.lhs.start, rel.lhs.end) != (rel.rhs.start, rel.rhs.end):
            raise PresentationError(f"relation {i} is not between parallel words")


def validate_presentation(g: GroupoidPresentation) -> None:
    """Raise PresentationError if ``g`` violates the presentation invariants."""
    _check_presentation(g)


# -- word operations ---------------------------------------------------------

def free_reduce(w: Word) -> Word:
    return Word(w.start, w.end, reduce_letters(w.letters))


def compose_words(w1: Word, w2: Word) -> Word:
    """The path ``w1`` followed by ``w2``, freely reduced."""
    if w1.end != w2.start:
        raise PresentationError(f"cannot compose: {w1} ends at {w1.end!r}, {w2} starts at {w2.start!r}")
    return Word(w1.start, w2.end, reduce_letters(w1.letters + w2.letters))


def invert_word(w: Word) -> Word:
    return Word(w.end, w.start, invert_letters(w.letters))


# -- functors ----------------------------------------------------------------

@dataclass(frozen=True, eq=True)
class FunctorPresentation:
    domain: GroupoidPresentation
    codomain: GroupoidPresentation
    object_map: Mapping = field(default_factory=dict)
    generator_map: Mapping = field(default_factory=dict)

    __hash__ = None

    def __post_init__(self):
        object.__setattr__(self, "object_map", dict(self.object_map))
        object.__setattr__(self, "generator_map", dict(self.generator_map))
        _check_functor_shape(self)

    def on_object(self, x):
        return self.object_map[x]

    def on_letter(self, letter: Letter) -> Word:
        img = self.generator_map[letter[0]]
        return img if letter[1] == 1 else invert_word(img)

    def on_word(self, w: Word) -> Word:
        """Image of a domain word, freely reduced."""
        letters: list = []
        for letter in w.letters:
            letters.extend(self.on_letter(letter).letters)
        return Word(self.object_map[w.start], self.object_map[w.end], reduce_letters(letters))


def _check_functor_shape(f: FunctorPresentation) -> None:
    dom, cod = f.domain, f.codomain
    for x in dom.objects:
        if x not in f.object_map:
            raise FunctorError(f"object {x!r} has no image")
        if not cod.has_object(f.object_map[x]):
            raise FunctorError(f"object {x!r} maps to unknown object {f.object_map[x]!r}")
    extra = set(f.object_map) - set(dom.objects)
    if extra:
        raise FunctorError(f"object map mentions unknown objects {sorted(extra)}")
    for gen in dom.generators:
        if gen.id not in f.generator_map:
            raise FunctorError(f"generator {gen.id!r} has no image")
        img = f.generator_map[gen.id]
        try:
            cod.check_word(img)
        except PresentationError as exc:
            raise FunctorError(f"image of {gen.id!r} is not a word of the codomain: {exc}") from None
        want = (f.object_map[gen.src], f.object_map[gen.dst])
        if (img.start, img.end) != want:
            raise FunctorError(
                f"image of {gen.id!r} runs {img.start!r}->{img.end!r}, expected {want[0]!r}->{want[1]!r}")
    extra = set(f.generator_map) - {g.id for g in dom.generators}
    if extra:
        raise FunctorError(f"generator map mentions unknown generators {sorted(extra)}")


def make_functor(domain, codomain, object_map, generator_map=None) -> FunctorPresentation:
    """Convenience constructor; generator images may be letter lists starting at the mapped source."""
    images = {}
    for gen_id, img in (generator_map or {}).items():
        if isinstance(img, Word):
            images[gen_id] = img
        else:
            src = object_map[domain.gen(gen_id).src]
            images[gen_id] = codomain.word(src, img)
    return FunctorPresentation(domain, codomain, object_map, images)


def identity_functor(g: GroupoidPresentation) -> FunctorPresentation:
    return FunctorPresentation(
        g, g, {x: x for x in g.objects},
        {e.id: g.generator_word(e.id) for e in g.generators})


def compose_functors(f: FunctorPresentation, g: FunctorPresentation) -> FunctorPresentation:
    """``g . f``: apply ``f`` first."""
    if f.codomain != g.domain:
        raise FunctorError("codomain of the first functor differs from domain of the second")
    return FunctorPresentation(
        f.domain, g.codomain,
        {x: g.object_map[y] for x, y in f.object_map.items()},
        {e: g.on_word(w) for e, w in f.generator_map.items()})


def is_injective_on_objects(f: FunctorPresentation) -> tuple[bool, tuple | None]:
    seen: dict = {}
    for x in f.domain.objects:
        y = f.object_map[x]
        if y in seen:
            return False, (seen[y], x)
        seen[y] = x
    return True, None


def validate_functor(f: FunctorPresentation, fuel: int = 10000, strict: bool = False) -> list[str]:
    """Check that ``f`` preserves every relation of its domain.

    Returns a list of warnings (relations the bounded word search could not
    settle).  Raises FunctorError if a relation image is provably broken, or
    if ``strict`` and some relation stays undecided.
    """
    from .wordproblem import Distinct, Equal, word_equal

    _check_functor_shape(f)
    warnings = []
    for i, rel in enumerate(f.domain.relations):
        verdict = word_equal(f.codomain, f.on_word(rel.lhs), f.on_word(rel.rhs), fuel)
        if isinstance(verdict, Equal):
            continue
        if isinstance(verdict, Distinct):
            raise FunctorError(f"relation {i} ({rel.lhs} = {rel.rhs}) is not preserved: {verdict}")
        msg = f"relation {i} ({rel.lhs} = {rel.rhs}): word problem undecided after {verdict.fuel_spent} steps"
        if strict:
            raise FunctorError(msg)
        warnings.append(msg)
    return warnings


# -- structure ---------------------------------------------------------------

def connected_components(g: GroupoidPresentation) -> list[list]:
    uf = UnionFind(g.objects, key=str)
    for e in g.generators:
        uf.union(e.src, e.dst)
    return uf.classes()


def spanning_tree(g: GroupoidPresentation, base) -> tuple[list, dict]:
    """Breadth-first spanning tree of the component of ``base``.

    Neighbours are visited in order of (object id, generator id).  Returns
    the component's objects in visiting order and a map ``object -> word``
    giving the tree path from ``base``.
    """
    if not g.has_object(base):
        raise PresentationError(f"unknown object {base!r}")
    order = [base]
    path = {base: ()}
    queue = deque([base])
    while queue:
        u = queue.popleft()
        cands = sorted(((other, gid, sign) for gid, other, sign in g.adjacency[u] if other not in path),
                       key=lambda t: (str(t[0]), t[1]))
        for other, gid, sign in cands:
            if other in path:
                continue
            path[other] = path[u] + ((gid, sign),)
            order.append(other)
            queue.append(other)
    return order, {x: Word(base, x, p) for x, p in path.items()}


def tree_generators(g: GroupoidPresentation, base) -> set:
    _, paths = spanning_tree(g, base)
    return {p.letters[-1][0] for p in paths.values() if p.letters}


# -- mapping cylinder --------------------------------------------------------

def _fresh(name: str, taken: set) -> str:
    while name in taken:
        name += "~"
    taken.add(name)
    return name


def mapping_cylinder(f: FunctorPresentation):
    """Replace ``f: G -> H`` by an object-injective ``f': G -> H'`` with ``H' ~ H``.

    ``H'`` adds a fresh copy ``x~`` of every object of ``G`` and one
    invertible arrow ``x~ -> f(x)``.  Returns ``(H', f', r)`` where the
    retraction ``r: H' -> H`` collapses the new arrows; ``r . f' = f``.
    """
    _check_functor_shape(f)
    G, H = f.domain, f.codomain
    taken_objs = set(H.objects)
    taken_gens = {e.id for e in H.generators}
    copy = {x: _fresh(f"{x}~", taken_objs) for x in G.objects}
    link = {x: _fresh(f"cyl[{x}]", taken_gens) for x in G.objects}
    gens = list(H.generators) + [Generator(link[x], copy[x], f.object_map[x]) for x in G.objects]
    h_prime = GroupoidPresentation(tuple(H.objects) + tuple(copy[x] for x in G.objects), gens, H.relations)
    images = {}
    for e in G.generators:
        body = f.generator_map[e.id].letters
        letters = ((link[e.src], 1),) + body + ((link[e.dst], -1),)
        images[e.id] = Word(copy[e.src], copy[e.dst], reduce_letters(letters))
    f_prime = FunctorPresentation(G, h_prime, copy, images)
    r_objects = {x: x for x in H.objects}
    r_objects.update({copy[x]: f.object_map[x] for x in G.objects})
    r_gens = {e.id: H.generator_word(e.id) for e in H.generators}
    r_gens.update({link[x]: Word.identity(f.object_map[x]) for x in G.objects})
    retraction = FunctorPresentation(h_prime, H, r_objects, r_gens)
    return h_prime, f_prime, retraction
