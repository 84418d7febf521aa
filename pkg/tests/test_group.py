import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from gpdcolim.errors import PresentationError, SmithOverflowError
from gpdcolim.group import (AbelianInvariant, GroupPresentation, abelian_hom, abelianization, exponent_matrix,
                            tietze_simplify)
from gpdcolim.smith import invariant_factors, smith_normal_form

import oracles


def matmul(a, b):
    return [[sum(a[i][k] * b[k][j] for k in range(len(b))) for j in range(len(b[0]))] for i in range(len(a))]


def assert_smith(a):
    D, U, V = smith_normal_form(a)
    assert matmul(matmul(U, a), V) == D
    assert abs(oracles.det(U)) == 1 and abs(oracles.det(V)) == 1
    diag = [D[i][i] for i in range(min(len(D), len(D[0])))]
    for i, row in enumerate(D):
        for j, v in enumerate(row):
            if i != j:
                assert v == 0
    nz = [d for d in diag if d]
    assert all(d > 0 for d in nz)
    assert all(b % a == 0 for a, b in zip(nz, nz[1:]))
    assert diag[:len(nz)] == nz


def test_smith_example():
    assert invariant_factors([[2, 4], [6, 8]]) == [2, 4]
    assert_smith([[2, 4], [6, 8]])


@pytest.mark.parametrize("a,expected", [
    ([[0, 0], [0, 0]], []),
    ([[6]], [6]),
    ([[2, 0], [0, 3]], [1, 6]),
    ([[1, 2, 3]], [1]),
    ([[4], [6]], [2]),
    ([[-3, 0], [0, 0]], [3]),
])
def test_small_invariant_factors(a, expected):
    assert invariant_factors(a) == expected
    assert invariant_factors(a) == oracles.naive_invariant_factors(a)


matrices = st.integers(1, 4).flatmap(lambda m: st.integers(1, 4).flatmap(
    lambda n: st.lists(st.lists(st.integers(-9, 9), min_size=n, max_size=n), min_size=m, max_size=m)))


@settings(max_examples=150)
@given(matrices)
def test_smith_against_determinantal_divisors(a):
    assert_smith(a)
    assert invariant_factors(a) == oracles.naive_invariant_factors(a)


def test_seeded_random_matrices():
    rng = random.Random(7)
    for _ in range(50):
        m, n = rng.randint(1, 5), rng.randint(1, 5)
        a = [[rng.randint(-20, 20) for _ in range(n)] for _ in range(m)]
        assert invariant_factors(a) == oracles.naive_invariant_factors(a)


def test_overflow_is_reported():
    with pytest.raises(SmithOverflowError):
        smith_normal_form([[1 << 63]])
    big = (1 << 62) + 1
    with pytest.raises(SmithOverflowError):
        smith_normal_form([[big, big - 1], [big - 1, big - 2], [3, 5]])


def test_ragged_matrix_rejected():
    with pytest.raises(ValueError):
        smith_normal_form([[1, 2], [3]])


# -- abelian invariants ------------------------------------------------------------


def G(gens, *relators):
    return GroupPresentation(tuple(gens), tuple(tuple((g, s) for g, s in r) for r in relators))


def power(g, k):
    return [(g, 1 if k > 0 else -1)] * abs(k)


def test_abelian_invariant_rules():
    assert str(AbelianInvariant(0)) == "0"
    assert str(AbelianInvariant(1, (2, 4))) == "Z^1 + Z/2 + Z/4"
    assert AbelianInvariant(2, (3,)).as_tuple() == (2, [3])
    with pytest.raises(ValueError):
        AbelianInvariant(0, (2, 3))
    with pytest.raises(ValueError):
        AbelianInvariant(0, (1,))
    with pytest.raises(ValueError):
        AbelianInvariant(-1)


def test_presentation_rejects_unknown_letters():
    with pytest.raises(PresentationError):
        G(["x"], [("y", 1)])
    with pytest.raises(PresentationError):
        G(["x", "x"])


@pytest.mark.parametrize("pres,expected", [
    (G(["x"]), AbelianInvariant(1)),
    (G([]), AbelianInvariant(0)),
    (G(["x"], power("x", 2)), AbelianInvariant(0, (2,))),
    (G(["x", "y"], power("x", 2) + power("y", 3)), AbelianInvariant(1)),
    (G(["x", "y"], power("x", 2), power("y", 3)), AbelianInvariant(0, (6,))),
    (G(["x", "y"], [("x", 1), ("y", 1), ("x", -1), ("y", -1)]), AbelianInvariant(2)),
    (G(["x", "y"], power("x", 4), power("y", 6)), AbelianInvariant(0, (2, 12))),
    (G(["x", "y"], [("y", 1)]), AbelianInvariant(1)),
])
def test_abelianization_examples(pres, expected):
    assert abelianization(pres) == expected
    free, torsion = oracles.naive_abelian_invariant(pres.generators, pres.relators)
    assert (free, torsion) == (expected.free_rank, list(expected.torsion))


relators = st.lists(st.lists(st.tuples(st.sampled_from("abc"), st.sampled_from([1, -1])), max_size=8), max_size=4)


@settings(max_examples=100)
@given(relators)
def test_abelianization_against_oracle(rels):
    p = G("abc", *rels)
    inv = abelianization(p)
    assert (inv.free_rank, list(inv.torsion)) == oracles.naive_abelian_invariant(p.generators, p.relators)


@settings(max_examples=100)
@given(relators)
def test_abelian_hom_kills_relators(rels):
    p = G("abc", *rels)
    assert abelian_hom(p).kills(p.relators)


def test_exponent_matrix():
    p = G(["x", "y"], [("x", 1), ("y", -1), ("x", 1)])
    assert exponent_matrix(p) == [[2, -1]]


# -- Tietze ----------------------------------------------------------------------------


def test_tietze_drops_a_trivial_generator():
    assert tietze_simplify(G(["x", "y"], [("y", 1)])) == G(["x"])


def test_tietze_keeps_torsion():
    p = tietze_simplify(G(["x"], power("x", 2)))
    assert p.generators == ("x",) and abelianization(p) == AbelianInvariant(0, (2,))


def test_tietze_eliminates_through_a_relator():
    # y = x^2 makes y redundant; the result is infinite cyclic
    p = tietze_simplify(G(["x", "y"], [("y", 1), ("x", -1), ("x", -1)]))
    assert p == G(["x"])


@settings(max_examples=100)
@given(relators)
def test_tietze_never_grows_and_keeps_abelianization(rels):
    p = G("abc", *rels)
    q = tietze_simplify(p)
    assert len(q.generators) <= len(p.generators)
    assert len(q.relators) <= len(p.relators)
    assert abelianization(q) == abelianization(p)
