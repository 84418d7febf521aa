"""Group presentations: vertex groups of presented groupoids, abelian
invariants via Smith normal form, and Tietze simplification."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

from .errors import PresentationError
from .groupoid import GroupoidPresentation, format_letter, invert_letters, reduce_letters, spanning_tree
from .smith import smith_normal_form


@dataclass(frozen=True)
class GroupPresentation:
    generators: tuple
    relators: tuple = ()

    def __post_init__(self):
        object.__setattr__(self, "generators", tuple(self.generators))
        object.__setattr__(self, "relators", tuple(tuple(r) for r in self.relators))
        gens = set(self.generators)
        if len(gens) != len(self.generators):
            raise PresentationError("duplicate group generators")
        for r in self.relators:
            for gen, sign in r:
                if gen not in gens or sign not in (1, -1):
                    raise PresentationError(f"relator uses unknown letter {(gen, sign)!r}")

    def __str__(self):
        rels = ", ".join(" ".join(format_letter(x) for x in r) or "1" for r in self.relators)
        return f"< {', '.join(self.generators)} | {rels} >"


@dataclass(frozen=True, order=True)
class AbelianInvariant:
    """``Z^free_rank + Z/d1 + Z/d2 + ...`` with ``d1 | d2 | ...`` and each ``d >= 2``."""

    free_rank: int
    torsion: tuple = ()

    def __post_init__(self):
        object.__setattr__(self, "torsion", tuple(self.torsion))
        if self.free_rank < 0:
            raise ValueError("negative free rank")
        for a, b in zip(self.torsion, self.torsion[1:]):
            if b % a:
                raise ValueError(f"torsion {self.torsion} is not a divisibility chain")
        if any(d < 2 for d in self.torsion):
            raise ValueError("torsion divisors must be >= 2")

    def is_trivial(self) -> bool:
        return self.free_rank == 0 and not self.torsion

    def __str__(self):
        parts = [f"Z^{self.free_rank}"] if self.free_rank else []
        parts += [f"Z/{d}" for d in self.torsion]
        return " + ".join(parts) or "0"

    def as_tuple(self):
        return (self.free_rank, list(self.torsion))


def exponent_matrix(p: GroupPresentation) -> list[list[int]]:
    index = {g: i for i, g in enumerate(p.generators)}
    rows = []
    for r in p.relators:
        row = [0] * len(p.generators)
        for gen, sign in r:
            row[index[gen]] += sign
        rows.append(row)
    return rows


@dataclass(frozen=True)
class AbelianHom:
    """A homomorphism from a presented group onto ``Z^r + Z/d1 + ...``.

    ``moduli[i] == 0`` marks a free coordinate.  ``images[g]`` is the
    coordinate vector of generator ``g``.
    """

    moduli: tuple
    images: dict

    __hash__ = None

    def value(self, letters: Iterable) -> tuple:
        acc = [0] * len(self.moduli)
        for gen, sign in letters:
            for i, c in enumerate(self.images.get(gen, ())):
                acc[i] += sign * c
        return tuple(a % m if m else a for a, m in zip(acc, self.moduli))

    def kills(self, relators: Iterable[Sequence]) -> bool:
        zero = (0,) * len(self.moduli)
        return all(self.value(r) == zero for r in relators)


def abelian_hom(p: GroupPresentation) -> AbelianHom:
    """The abelianization map of ``p`` in Smith coordinates."""
    k = len(p.generators)
    rows = exponent_matrix(p)
    if rows and k:
        D, _, V = smith_normal_form(rows)
        diag = [D[i][i] for i in range(min(len(D), k))]
    else:
        V = [[int(i == j) for j in range(k)] for i in range(k)]
        diag = []
    diag += [0] * (k - len(diag))
    keep = [i for i, d in enumerate(diag) if d != 1]
    moduli = tuple(diag[i] for i in keep)
    images = {}
    for j, gen in enumerate(p.generators):
        images[gen] = tuple(V[j][i] % diag[i] if diag[i] else V[j][i] for i in keep)
    return AbelianHom(moduli, images)


def abelianization(p: GroupPresentation) -> AbelianInvariant:
    hom = abelian_hom(p)
    free = sum(1 for m in hom.moduli if m == 0)
    torsion = tuple(sorted(m for m in hom.moduli if m > 1))
    return AbelianInvariant(free, torsion)


def collapse_tree(letters: Iterable, tree: set) -> tuple:
    return reduce_letters(x for x in letters if x[0] not in tree)


def vertex_group(g: GroupoidPresentation, base) -> GroupPresentation:
    """Presentation of the automorphism group of ``base``.

    Tree arrows of the breadth-first spanning tree of ``base``'s component
    become trivial; every other generator in the component is a group
    generator, and every relation in the component becomes a relator.
    """
    order, paths = spanning_tree(g, base)
    comp = set(order)
    tree = {p.letters[-1][0] for p in paths.values() if p.letters}
    gens = [e.id for e in g.generators if e.src in comp and e.id not in tree]
    relators = []
    for rel in g.relations:
        if rel.lhs.start not in comp:
            continue
        r = collapse_tree(rel.lhs.letters + invert_letters(rel.rhs.letters), tree)
        if r:
            relators.append(r)
    return GroupPresentation(tuple(gens), tuple(relators))


# -- Tietze moves -------------------------------------------------------------

def _cyclic_reduce(r: tuple) -> tuple:
    r = reduce_letters(r)
    while len(r) >= 2 and r[0][0] == r[-1][0] and r[0][1] == -r[-1][1]:
        r = r[1:-1]
    return r


def _canonical(r: tuple) -> tuple:
    variants = []
    for w in (r, invert_letters(r)):
        for i in range(len(w)):
            variants.append(w[i:] + w[:i])
    return min(variants) if variants else ()


def tietze_simplify(p: GroupPresentation, fuel: int = 10000) -> GroupPresentation:
    """Shrink ``p`` with Tietze moves, in a fixed order.

    Moves: cyclically reduce relators, drop trivial or repeated relators, and
    eliminate a generator that occurs exactly once in some relator (shortest
    relator first, then generator order).  Never increases generator or
    relator counts.
    """
    gens = list(p.generators)
    rels = [tuple(r) for r in p.relators]
    steps = 0
    while steps < fuel:
        steps += 1
        cleaned, seen = [], set()
        for r in rels:
            r = _cyclic_reduce(r)
            key = _canonical(r)
            if r and key not in seen:
                seen.add(key)
                cleaned.append(r)
        rels = cleaned
        move = None
        for ri in sorted(range(len(rels)), key=lambda i: (len(rels[i]), i)):
            r = rels[ri]
            for gen in gens:
                hits = [pos for pos, x in enumerate(r) if x[0] == gen]
                if len(hits) == 1:
                    move = (ri, gen, hits[0])
                    break
            if move:
                break
        if move is None:
            break
        ri, gen, pos = move
        r = rels[ri]
        before, sign, after = r[:pos], r[pos][1], r[pos + 1:]
        # before * gen^sign * after = 1
        value = invert_letters(before) + invert_letters(after)
        if sign == -1:
            value = invert_letters(value)
        sub = {(gen, 1): value, (gen, -1): invert_letters(value)}
        new_rels = []
        for j, other in enumerate(rels):
            if j == ri:
                continue
            out = []
            for x in other:
                out.extend(sub.get(x, (x,)))
            new_rels.append(reduce_letters(out))
        rels = new_rels
        gens.remove(gen)
    rels = [r for r in (_cyclic_reduce(r) for r in rels) if r]
    return GroupPresentation(tuple(gens), tuple(rels))
