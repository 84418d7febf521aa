import pytest

from gpdcolim.descent import (DescentCategory, DescentObject, Pullback, compose_descent_morphisms,
                              descent_from_functor, descent_from_transformation, descent_pullback_gamma_delta,
                              enumerate_cones, enumerate_descent, functor_from_descent, gamma_embed,
                              transformation_from_descent, validate_descent, validate_descent_morphism)
from gpdcolim.diagram import restrict
from gpdcolim.errors import FuelExhausted, ViewError
from gpdcolim.finite import FunctorGroupoid, Morphism, enumerate_functors
from gpdcolim.poset import PosetView
from gpdcolim.twocolim import grothendieck

import oracles
from corpus import b3_corpus, corpus, targets

SMALL = ["s1", "s0-collapse", "z2-basepoint", "two-loops", "z2-interval", "b3-z2", "b3-mixed", "b3-split-corner"]


def category(name, target, view=None):
    return DescentCategory(corpus()[name], view, targets()[target], fuel=10 ** 7)


@pytest.mark.parametrize("name", SMALL)
@pytest.mark.parametrize("target", ["Z/2", "interval"])
def test_enumerated_objects_are_valid_and_distinct(name, target):
    cat = category(name, target)
    assert cat.objects
    keys = {D.key() for D in cat.objects}
    assert len(keys) == len(cat.objects)
    for D in cat.objects:
        assert validate_descent(cat.ctx, D) == []


@pytest.mark.parametrize("name", SMALL)
@pytest.mark.parametrize("target", ["Z/2", "discrete2"])
def test_k_and_j_are_inverse(name, target):
    cat = category(name, target)
    gp = grothendieck(cat.ctx.d)
    h = cat.h
    thetas = enumerate_functors(gp.groupoid, h, fuel=10 ** 7)
    assert len(thetas) == len(cat.objects)
    for D in cat.objects:
        theta = functor_from_descent(gp, D)
        for rel in gp.groupoid.relations:
            assert oracles._eval(h, theta.obj, theta.gen, rel.lhs) == oracles._eval(h, theta.obj, theta.gen, rel.rhs)
        assert descent_from_functor(gp, theta).key() == D.key()
    for theta in thetas:
        back = functor_from_descent(gp, descent_from_functor(gp, theta))
        assert back.key() == theta.key()


@pytest.mark.parametrize("name", ["s1", "b3-z2", "b3-mixed"])
def test_transformations_round_trip(name):
    cat = category(name, "Z/2")
    gp = grothendieck(cat.ctx.d)
    for X in cat.objects[:4]:
        for Y in cat.objects[:4]:
            for f in cat.morphisms(X, Y):
                assert validate_descent_morphism(cat.ctx, X, Y, f) == []
                eta = transformation_from_descent(gp, f)
                assert descent_from_transformation(gp, eta) == f


def test_tampered_cocycle_is_rejected():
    cat = category("b3-z2", "Z/2")
    ctx = cat.ctx
    D = cat.objects[0]
    key = ctx.covers[0]
    A = {k: dict(v) for k, v in D.A.items()}
    x = next(iter(A[key]))
    m = A[key][x]
    A[key][x] = Morphism(m.src, m.dst, 1 - m.g)
    problems = validate_descent(ctx, DescentObject(dict(D.X), A))
    assert problems


def test_cocycle_failure_on_a_diamond():
    # with identity functors into Z/2 every transition must be natural; flipping both
    # transitions along one side of a diamond keeps naturality but breaks the cocycle
    cat = category("b3-z2", "Z/2")
    ctx = cat.ctx
    D = next(D for D in cat.objects if all(m.g == 0 for a in D.A.values() for m in a.values()))
    s = ctx.d.view.members[0]
    t1 = ctx.ups[s][0]
    A = {k: dict(v) for k, v in D.A.items()}
    A[(s, t1)] = {x: Morphism(m.src, m.dst, 1) for x, m in A[(s, t1)].items()}
    problems = validate_descent(ctx, DescentObject(dict(D.X), A))
    assert any("cocycle" in p for p in problems)


@pytest.mark.parametrize("name", sorted(corpus()))
@pytest.mark.parametrize("target", ["Z/2", "interval"])
def test_cones_match_brute_force(name, target):
    d, h = corpus()[name], targets()[target]
    cat = DescentCategory(d, None, h, fuel=10 ** 7)
    cones = enumerate_cones(cat.ctx, fuel=10 ** 7)
    assert len(cones) == oracles.count_strict_cones(d, h)
    keys = {D.key() for D in cat.objects}
    for cone in cones:
        assert gamma_embed(cat.ctx, cone).key() in keys


def test_gamma_embed_rejects_non_cones():
    cat = category("z2-half-killed", "Z/2")
    cones = enumerate_cones(cat.ctx)
    good = cones[0]
    bad = dict(good)
    top = next(t for t in cat.ctx.maximal if cat.ctx.g(t).generators)
    other = [F for F in enumerate_functors(cat.ctx.g(top), cat.h) if F.key() != good[top].key()]
    bad[top] = other[0]
    with pytest.raises(ValueError):
        gamma_embed(cat.ctx, bad)


@pytest.mark.parametrize("name", SMALL)
def test_classification_against_functor_groupoid(name):
    cat = category(name, "Z/2")
    fg = FunctorGroupoid(grothendieck(cat.ctx.d).groupoid, cat.h, fuel=10 ** 7).classification()
    dc = cat.classification()
    assert (dc.class_count, dc.morphism_count) == (fg.class_count, fg.morphism_count)
    canon = DescentCategory(cat.ctx.d, None, cat.h, fuel=10 ** 7, bucket="canonical").classification()
    assert canon.class_count == dc.class_count


def test_composition_of_descent_morphisms_is_a_morphism():
    cat = category("b3-mixed", "Z/2")
    X = cat.objects[0]
    auts = cat.morphisms(X, X)
    for f in auts:
        for g in auts:
            assert validate_descent_morphism(cat.ctx, X, X, compose_descent_morphisms(cat.ctx, f, g)) == []


def test_fuel_is_enforced():
    cat = category("s1", "Z/2")
    with pytest.raises(FuelExhausted):
        enumerate_descent(cat.ctx, fuel=3)


def test_view_must_be_inside_the_diagram():
    with pytest.raises(ViewError):
        DescentCategory(corpus()["s1"], PosetView.full(3), targets()["Z/2"])


# -- the pullback P ------------------------------------------------------------------------------


@pytest.mark.parametrize("name", SMALL + sorted(b3_corpus()))
@pytest.mark.parametrize("target", ["Z/2", "discrete2"])
def test_gamma_delta(name, target):
    rep = descent_pullback_gamma_delta(corpus()[name], targets()[target], fuel=10 ** 7)
    assert rep.ok, rep.problems[:3]
    assert rep.p_classes == rep.descent_classes


def test_pullback_objects_validate():
    P = Pullback(corpus()["b3-mixed"], targets()["Z/2"], fuel=10 ** 7)
    assert P.objects
    for p in P.objects:
        assert P.validate(p) == []
        assert P.four_case_problems(p) == []


def test_pullback_needs_full_view():
    with pytest.raises(ViewError):
        Pullback(restrict(corpus()["b3-z2"], PosetView.codim(3, 1)), targets()["Z/2"])
