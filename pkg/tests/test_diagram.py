import json

import pytest

from gpdcolim.diagram import (Diagram, check_strictness, ensure_strict, from_json, functor_between, load, restrict,
                              save, to_json, validate_diagram)
from gpdcolim.errors import FunctorError, SchemaError, UnverifiedDiagram, ViewError
from gpdcolim.examples import cyclic, discrete, s0_collapse, s1
from gpdcolim.groupoid import Generator, GroupoidPresentation, Relation, identity_functor, make_functor
from gpdcolim.poset import PosetView, Subset

from corpus import b4_corpus, collapse, corpus, level


def S(n, *members):
    return Subset.of(n, members)


def swapped_b3():
    d2 = discrete("a", "b")
    swap = make_functor(d2, d2, {"a": "b", "b": "a"})
    ident = identity_functor(d2)
    view = PosetView.full(3)
    funs = {}
    d = level(3, [d2, d2, d2], [ident, ident])
    funs = dict(d.functors)
    funs[(S(3), S(3, 1))] = swap
    return Diagram(view, dict(d.groupoids), funs)


def killed_on_one_side_b3():
    z = cyclic(2)
    d = level(3, [z, z, z], [identity_functor(z), identity_functor(z)])
    funs = dict(d.functors)
    funs[(S(3), S(3, 2))] = make_functor(z, z, {"*": "*"}, {"t": []})
    return Diagram(d.view, dict(d.groupoids), funs)


def s3_presentation():
    g = GroupoidPresentation(("*",), (Generator("s", "*", "*"), Generator("t", "*", "*")))
    w = g.word
    rels = (Relation(w("*", ["s", "s"]), w("*")), Relation(w("*", ["t", "t", "t"]), w("*")),
            Relation(w("*", ["s", "t", "s", "t"]), w("*")))
    return GroupoidPresentation(g.objects, g.generators, rels)


def inverted_s3_b3():
    g = s3_presentation()
    ident = identity_functor(g)
    d = level(3, [g, g, g], [ident, ident])
    funs = dict(d.functors)
    funs[(S(3), S(3, 1))] = make_functor(g, g, {"*": "*"}, {"s": ["s"], "t": ["t^-1"]})
    return Diagram(d.view, dict(d.groupoids), funs)


# -- construction ---------------------------------------------------------------------------


def test_missing_groupoid_or_functor():
    d = s1()
    groupoids = dict(d.groupoids)
    del groupoids[S(2, 1)]
    with pytest.raises(SchemaError):
        Diagram(d.view, groupoids, d.functors)
    functors = dict(d.functors)
    functors.pop((S(2), S(2, 2)))
    with pytest.raises(SchemaError):
        Diagram(d.view, d.groupoids, functors)


def test_functor_on_non_cover_rejected():
    d = level(3, [discrete("a")] * 3, [identity_functor(discrete("a"))] * 2)
    funs = dict(d.functors)
    funs[(S(3), S(3, 1, 2))] = identity_functor(discrete("a"))
    with pytest.raises(SchemaError):
        Diagram(d.view, d.groupoids, funs)


def test_functor_with_wrong_codomain_rejected():
    d = s1()
    funs = dict(d.functors)
    funs[(S(2), S(2, 1))] = d.functors[(S(2), S(2, 2))]
    with pytest.raises(SchemaError):
        Diagram(d.view, d.groupoids, funs)


def test_invalid_cover_functor_reported():
    z2, z3 = cyclic(2), cyclic(3)
    p = discrete("*")
    view = PosetView.full(2)
    d = Diagram(view, {S(2): z3, S(2, 1): z2, S(2, 2): p},
                {(S(2), S(2, 1)): make_functor(z3, z2, {"*": "*"}, {"t": ["t"]}),
                 (S(2), S(2, 2)): collapse(z3, p)})
    with pytest.raises(FunctorError):
        validate_diagram(d)


# -- strictness --------------------------------------------------------------------------------


@pytest.mark.parametrize("name", sorted(corpus()))
def test_corpus_is_strict(name):
    assert check_strictness(corpus()[name]).verified


@pytest.mark.parametrize("name", sorted(b4_corpus()))
def test_b4_corpus_is_strict(name):
    assert check_strictness(b4_corpus()[name]).verified


def test_object_mismatch_detected():
    report = check_strictness(swapped_b3())
    kinds = {f.kind for f in report.failures}
    assert kinds == {"object-mismatch"}
    with pytest.raises(UnverifiedDiagram):
        ensure_strict(swapped_b3())


def test_generator_mismatch_refuted():
    report = check_strictness(killed_on_one_side_b3())
    assert report.failures and all(f.kind == "generator-verdict" for f in report.failures)
    assert not report.unknowns


def test_undecided_diamond_is_not_strict():
    d = inverted_s3_b3()
    report = check_strictness(d)
    assert not report.failures and report.unknowns
    with pytest.raises(UnverifiedDiagram):
        ensure_strict(d)
    assert not ensure_strict(d, force=True).verified


# -- composites and restriction -----------------------------------------------------------------


def test_functor_between_follows_canonical_chain():
    d = corpus()["b3-split-corner"]
    f = functor_between(d, S(3), S(3, 1, 3))
    assert f.object_map == {"a": "*", "b": "*"}
    assert functor_between(d, S(3, 3), S(3, 3)) == identity_functor(d.groupoids[S(3, 3)])
    with pytest.raises(ViewError):
        functor_between(d, S(3, 1), S(3, 2))


def test_restrict_to_codim_and_relative_views():
    d = corpus()["b3-mixed"]
    sub = restrict(d, PosetView.codim(3, 2))
    assert list(sub.view) == [S(3, 1, 2), S(3, 1, 3), S(3, 2, 3)] and sub.functors == {}
    upper = restrict(d, PosetView.rel(Subset.full(3), S(3, 3)))
    assert set(upper.functors) == {(S(3, 3), S(3, 1, 3)), (S(3, 3), S(3, 2, 3))}
    assert check_strictness(upper).verified
    with pytest.raises(ViewError):
        restrict(s1(), PosetView.full(3))


def test_restrict_b4_drops_only_the_empty_set():
    d = b4_corpus()["b4-wild-corner"]
    sub = restrict(d, PosetView.codim(4, 1))
    assert set(d.groupoids) - set(sub.groupoids) == {Subset(4, 0)}
    assert len(sub.functors) == len(d.functors) - 4


# -- serialization -------------------------------------------------------------------------------


@pytest.mark.parametrize("name", sorted(corpus()))
def test_json_round_trip(name):
    d = corpus()[name]
    again = load(save(d))
    assert again == d
    assert save(again) == save(d)


def test_restricted_views_round_trip():
    d = restrict(corpus()["b3-z2"], PosetView.rel(Subset.full(3), S(3, 3)))
    assert load(save(d)) == d
    c = restrict(corpus()["b3-z2"], PosetView.codim(3, 1))
    assert to_json(c)["view"] == {"codim": 1} and len(c.functors) == 6
    assert load(save(c)) == c


def _mutations():
    base = to_json(s0_collapse())
    out = {"not an object": [1, 2]}

    def change(label, fn):
        doc = json.loads(json.dumps(base))
        fn(doc)
        out[label] = doc

    change("missing ground_n", lambda d: d.pop("ground_n"))
    change("zero ground_n", lambda d: d.update(ground_n=0))
    change("bad view", lambda d: d.update(view="partial"))
    change("bad codim", lambda d: d.update(view={"codim": 7}))
    change("unsorted literal", lambda d: d["groupoids"].update({"{2,1}": d["groupoids"]["{}"]}))
    change("missing groupoid", lambda d: d["groupoids"].pop("{1}"))
    change("missing functor", lambda d: d["functors"].pop("{}<{1}"))
    change("bad functor key", lambda d: d["functors"].update({"{}": {}}))
    change("unknown object", lambda d: d["functors"]["{}<{1}"]["objects"].update(c="nowhere"))
    change("generator with no source", lambda d: d["groupoids"]["{}"]["generators"].append({"id": "x"}))
    change("relation with foreign letter", lambda d: d["groupoids"]["{1}"]["relations"].append(
        {"lhs": ["zz"], "lhs_start": "p1", "rhs": [], "rhs_start": "p1"}))
    return out


@pytest.mark.parametrize("label,doc", list(_mutations().items()))
def test_schema_errors(label, doc):
    with pytest.raises(SchemaError):
        from_json(doc)


def test_bad_json_text():
    with pytest.raises(SchemaError, match="line 1"):
        load("{nope")
