"""Three-valued word problem for presented groupoids.

``word_equal`` answers ``Equal`` only with a proof (free reduction, a
relator-rewriting derivation, or a completed coset enumeration), answers
``Distinct`` only with an abelian homomorphism that separates the two
words, and otherwise gives up with ``Unknown``.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass

from .errors import PresentationError
from .group import AbelianHom, GroupPresentation, abelian_hom, collapse_tree, vertex_group
from .groupoid import GroupoidPresentation, Word, invert_letters, reduce_letters, spanning_tree


@dataclass(frozen=True)
class Equal:
    method: str = "free"

    def __str__(self):
        return f"Equal ({self.method})"


@dataclass(frozen=True)
class AbelianCertificate:
    """An abelian-group valued functor on one component of a groupoid.

    Tree generators go to zero; ``hom`` gives the other generators.  The
    certificate is checked against the presentation by :func:`recheck`.
    """

    base: object
    tree: frozenset
    hom: AbelianHom
    lhs_value: tuple
    rhs_value: tuple

    __hash__ = None

    def value(self, letters) -> tuple:
        return self.hom.value(x for x in letters if x[0] not in self.tree)


@dataclass(frozen=True)
class Distinct:
    certificate: AbelianCertificate

    __hash__ = None

    def __str__(self):
        c = self.certificate
        return f"Distinct (abelian images {c.lhs_value} != {c.rhs_value} in moduli {c.hom.moduli})"


@dataclass(frozen=True)
class Unknown:
    fuel_spent: int

    def __str__(self):
        return f"Unknown (gave up after {self.fuel_spent} steps)"


def recheck(g: GroupoidPresentation, w1: Word, w2: Word, cert: AbelianCertificate) -> bool:
    """Verify a Distinct certificate from scratch."""
    _, paths = spanning_tree(g, cert.base)
    comp = set(paths)
    tree = {p.letters[-1][0] for p in paths.values() if p.letters}
    if tree != set(cert.tree) or w1.start not in comp:
        return False
    for rel in g.relations:
        if rel.lhs.start in comp and cert.value(rel.lhs.letters) != cert.value(rel.rhs.letters):
            return False
    return cert.value(w1.letters) != cert.value(w2.letters)


def word_equal(g: GroupoidPresentation, w1: Word, w2: Word, fuel: int = 10000):
    if (w1.start, w1.end) != (w2.start, w2.end):
        raise PresentationError(f"words {w1} and {w2} are not parallel")
    g.check_word(w1)
    g.check_word(w2)
    loop = reduce_letters(w1.letters + invert_letters(w2.letters))
    if not loop:
        return Equal("free")
    base = w1.start
    group = vertex_group(g, base)
    _, paths = spanning_tree(g, base)
    tree = frozenset(p.letters[-1][0] for p in paths.values() if p.letters)
    u = collapse_tree(loop, tree)
    if not u:
        return Equal("free")
    hom = abelian_hom(group)
    zero = (0,) * len(hom.moduli)
    if hom.value(u) != zero:
        cert = AbelianCertificate(base, tree, hom, hom.value(collapse_tree(w1.letters, tree)),
                                  hom.value(collapse_tree(w2.letters, tree)))
        return Distinct(cert)
    verdict, spent = group_word_is_trivial(group, u, fuel)
    if verdict is not None:
        return Equal(verdict)
    return Unknown(spent)


def group_word_is_trivial(p: GroupPresentation, word: tuple, fuel: int) -> tuple:
    """Try to prove ``word == 1``; returns (method or None, fuel spent)."""
    word = reduce_letters(word)
    if not word:
        return "free", 0
    if not p.relators:
        return None, 0
    budget = max(fuel // 2, 1)
    ok, spent = _rewrite_search(p, word, budget)
    if ok:
        return "rewriting", spent
    table = todd_coxeter(p, max_cosets=min(max(fuel - spent, 1), 5000))
    spent += table.defined if table else min(max(fuel - spent, 1), 5000)
    if table is not None:
        if table.evaluate(word) == 0:
            return "coset enumeration", spent
        return None, spent
    return None, spent


def _relator_variants(p: GroupPresentation) -> list:
    out = set()
    for r in p.relators:
        r = reduce_letters(r)
        for w in (r, invert_letters(r)):
            for i in range(len(w)):
                out.add(w[i:] + w[:i])
    return sorted(out, key=lambda w: (len(w), w))


def _rewrite_search(p: GroupPresentation, word: tuple, fuel: int) -> tuple:
    """Breadth-first search for a derivation ``word -> 1``.

    A move replaces a subword equal to a prefix of a cyclic relator variant
    ``rho = a b`` by ``b^-1`` (valid since ``a b = 1``).  Words longer than
    the start word plus the longest relator are discarded.
    """
    variants = _relator_variants(p)
    cap = len(word) + max(len(v) for v in variants)
    seen = {word}
    queue = deque([word])
    spent = 0
    while queue and spent < fuel:
        w = queue.popleft()
        spent += 1
        for i in range(len(w) + 1):
            for rho in variants:
                for L in range(0, len(rho) + 1):
                    if w[i:i + L] != rho[:L] or i + L > len(w):
                        break
                    new = reduce_letters(w[:i] + invert_letters(rho[L:]) + w[i + L:])
                    if not new:
                        return True, spent
                    if len(new) <= cap and new not in seen:
                        seen.add(new)
                        queue.append(new)
    return False, spent


class CosetTable:
    def __init__(self, gens, table):
        self.gens = gens
        self.index = {g: i for i, g in enumerate(gens)}
        self.table = table
        self.defined = len(table)

    def evaluate(self, word, start=0):
        c = start
        for gen, sign in word:
            c = self.table[c][2 * self.index[gen] + (0 if sign == 1 else 1)]
        return c

    @property
    def order(self):
        return len(self.table)


def todd_coxeter(p: GroupPresentation, max_cosets: int = 5000):
    """Coset enumeration over the trivial subgroup (HLT strategy).

    Returns the completed regular permutation table, or None when more than
    ``max_cosets`` cosets would be defined.
    """
    k = len(p.generators)
    index = {g: i for i, g in enumerate(p.generators)}
    rels = [[2 * index[g] + (0 if s == 1 else 1) for g, s in reduce_letters(r)] for r in p.relators]
    rels = [r for r in rels if r]
    width = 2 * k
    table = [[None] * width]
    parent = [0]

    class _Overflow(Exception):
        pass

    def rep(c):
        root = c
        while parent[root] != root:
            root = parent[root]
        while parent[c] != root:
            parent[c], c = root, parent[c]
        return root

    def define(c, x):
        if len(table) >= max_cosets:
            raise _Overflow
        d = len(table)
        table.append([None] * width)
        parent.append(d)
        table[c][x] = d
        table[d][x ^ 1] = c

    def merge(a, b, queue):
        a, b = rep(a), rep(b)
        if a != b:
            lo, hi = min(a, b), max(a, b)
            parent[hi] = lo
            queue.append(hi)

    def coincidence(a, b):
        queue = []
        merge(a, b, queue)
        i = 0
        while i < len(queue):
            gamma = queue[i]
            i += 1
            for x in range(width):
                delta = table[gamma][x]
                if delta is None:
                    continue
                table[delta][x ^ 1] = None
                mu, nu = rep(gamma), rep(delta)
                if table[mu][x] is not None:
                    merge(nu, table[mu][x], queue)
                elif table[nu][x ^ 1] is not None:
                    merge(mu, table[nu][x ^ 1], queue)
                else:
                    table[mu][x] = nu
                    table[nu][x ^ 1] = mu

    def scan_and_fill(c, word):
        f, b = c, c
        i, j = 0, len(word) - 1
        while True:
            while i <= j and table[f][word[i]] is not None:
                f = table[f][word[i]]
                i += 1
            if i > j:
                if f != b:
                    coincidence(f, b)
                return
            while j >= i and table[b][word[j] ^ 1] is not None:
                b = table[b][word[j] ^ 1]
                j -= 1
            if j < i:
                coincidence(f, b)
                return
            if i == j:
                table[f][word[i]] = b
                table[b][word[i] ^ 1] = f
                return
            define(f, word[i])

    try:
        c = 0
        while c < len(table):
            if parent[c] == c:
                for r in rels:
                    scan_and_fill(c, r)
                    if parent[c] != c:
                        break
                if parent[c] == c:
                    for x in range(width):
                        if table[c][x] is None:
                            define(c, x)
            c += 1
    except _Overflow:
        return None
    live = [c for c in range(len(table)) if parent[c] == c]
    renum = {c: i for i, c in enumerate(live)}
    compact = [[renum[rep(table[c][x])] for x in range(width)] for c in live]
    out = CosetTable(list(p.generators), compact)
    out.defined = len(table)
    return out
