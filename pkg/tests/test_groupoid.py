import pytest
from hypothesis import given
from hypothesis import strategies as st

from gpdcolim.errors import FunctorError, PresentationError
from gpdcolim.examples import cyclic, discrete, interval, point
from gpdcolim.group import abelianization, vertex_group
from gpdcolim.groupoid import (FunctorPresentation, Generator, GroupoidPresentation, Relation, Word, compose_functors,
                               compose_words, connected_components, free_reduce, identity_functor, invert_word,
                               is_injective_on_objects, make_functor, mapping_cylinder, spanning_tree,
                               validate_functor, validate_presentation)

import oracles
from corpus import Z2_interval, Z2_plus_point, corpus

# -- words ----------------------------------------------------------------------------------


def loops(n=2):
    """One object with ``n`` free loops."""
    return GroupoidPresentation(("*",), tuple(Generator(f"x{i}", "*", "*") for i in range(n)))


def test_free_reduce_examples():
    g = interval("a", "b", "e")
    assert free_reduce(g.word("a", ["e", "e^-1"])) == Word.identity("a")
    assert free_reduce(Word.identity("a")) == Word.identity("a")
    h = loops()
    assert free_reduce(h.word("*", ["x0", "x1", "x1^-1"])) == h.word("*", ["x0"])


def test_compose_and_invert_examples():
    g = interval("a", "b", "e")
    w = g.word("a", ["e"])
    assert compose_words(Word.identity("a"), w) == w
    assert invert_word(invert_word(w)) == w
    assert compose_words(w, invert_word(w)) == Word.identity("a")
    with pytest.raises(PresentationError):
        compose_words(w, w)


letters = st.lists(st.tuples(st.sampled_from(["x0", "x1"]), st.sampled_from([1, -1])), max_size=12)


@given(letters)
def test_free_reduce_idempotent_and_endpoint_preserving(ls):
    w = loops().word("*", ls)
    r = free_reduce(w)
    assert free_reduce(r) == r
    assert (r.start, r.end) == (w.start, w.end)
    assert all(not (a[0] == b[0] and a[1] == -b[1]) for a, b in zip(r.letters, r.letters[1:]))


@given(letters, letters)
def test_inverse_of_composite(a, b):
    g = loops()
    u, v = g.word("*", a), g.word("*", b)
    assert invert_word(compose_words(u, v)) == compose_words(invert_word(v), invert_word(u))


# -- presentations -----------------------------------------------------------------------------


def test_presentation_invariants():
    with pytest.raises(PresentationError):
        GroupoidPresentation(("a",), (Generator("e", "a", "b"),))
    g = interval("a", "b", "e")
    with pytest.raises(PresentationError):
        GroupoidPresentation(g.objects, g.generators, (Relation(g.word("a", ["e"]), g.word("a")),))
    with pytest.raises(PresentationError):
        g.word("b", ["e"])
    validate_presentation(Z2_interval())


# -- functors ----------------------------------------------------------------------------------


def test_identity_functor_is_valid():
    g = Z2_interval()
    assert validate_functor(identity_functor(g)) == []


def test_wrong_endpoints_rejected():
    g = interval("a", "b", "e")
    with pytest.raises(FunctorError):
        FunctorPresentation(g, g, {"a": "a", "b": "b"}, {"e": Word.identity("a")})


def test_collapse_of_discrete_is_valid():
    d, p = discrete("a", "b"), point()
    f = make_functor(d, p, {"a": "*", "b": "*"})
    assert validate_functor(f) == []


def test_relation_breaking_functor_rejected():
    z3, z2 = cyclic(3), cyclic(2)
    f = make_functor(z3, z2, {"*": "*"}, {"t": ["t"]})
    with pytest.raises(FunctorError):
        validate_functor(f)


def test_composition_laws():
    g = Z2_interval()
    z = cyclic(2)
    f = make_functor(g, z, {"a": "*", "b": "*"}, {"e": [], "t": ["t"]})
    assert compose_functors(f, identity_functor(z)) == f
    assert compose_functors(identity_functor(g), f) == f
    k = make_functor(z, z, {"*": "*"}, {"t": ["t^-1"]})
    assert compose_functors(compose_functors(f, k), k) == compose_functors(f, compose_functors(k, k))
    incl = make_functor(discrete("a", "b"), g, {"a": "a", "b": "b"})
    coll = compose_functors(incl, f)
    assert set(coll.object_map.values()) == {"*"}
    with pytest.raises(FunctorError):
        compose_functors(f, f)


def test_injective_on_objects():
    a, ab, p = discrete("a"), discrete("a", "b"), point()
    assert is_injective_on_objects(make_functor(a, ab, {"a": "a"})) == (True, None)
    assert is_injective_on_objects(make_functor(ab, p, {"a": "*", "b": "*"})) == (False, ("a", "b"))
    assert is_injective_on_objects(identity_functor(ab))[0]


# -- mapping cylinder -----------------------------------------------------------------------------


def test_cylinder_of_collapse():
    ab, p = discrete("a", "b"), point()
    h, f, r = mapping_cylinder(make_functor(ab, p, {"a": "*", "b": "*"}))
    assert len(h.objects) == 3 and len(h.generators) == 2
    assert f.object_map == {"a": "a~", "b": "b~"}
    assert is_injective_on_objects(f)[0]
    assert compose_functors(f, r).object_map == {"a": "*", "b": "*"}


def _all_functors():
    for name, d in corpus().items():
        for (s, t), f in d.functors.items():
            yield f"{name}:{s}<{t}", f


@pytest.mark.parametrize("name,f", list(_all_functors())[:40], ids=lambda v: v if isinstance(v, str) else "")
def test_cylinder_properties_on_corpus(name, f):
    h, fp, r = mapping_cylinder(f)
    assert is_injective_on_objects(fp)[0]
    assert validate_functor(fp) == [] and validate_functor(r) == []
    assert len(connected_components(h)) == len(connected_components(f.codomain))
    back = compose_functors(fp, r)
    assert back.object_map == f.object_map
    for comp in connected_components(f.codomain):
        assert abelianization(vertex_group(h, comp[0])) == abelianization(vertex_group(f.codomain, comp[0]))


def test_cylinder_of_injective_functor_stays_injective():
    a, ab = discrete("a"), discrete("a", "b")
    _, fp, r = mapping_cylinder(make_functor(a, ab, {"a": "a"}))
    assert is_injective_on_objects(fp)[0]
    assert validate_functor(r) == []


# -- components and vertex groups --------------------------------------------------------------------


def test_components_examples():
    assert len(connected_components(discrete("a", "b"))) == 2
    assert len(connected_components(interval("a", "b", "e"))) == 1
    s1_colim = GroupoidPresentation(("A", "B"), (Generator("e1", "A", "B"), Generator("e2", "A", "B")))
    assert len(connected_components(s1_colim)) == 1
    assert len(connected_components(Z2_plus_point())) == 2


def test_vertex_group_examples():
    tri = GroupoidPresentation(("a", "b", "c"), (Generator("x", "a", "b"), Generator("y", "b", "c"),
                                                 Generator("z", "c", "a")))
    assert len(vertex_group(tri, "a").generators) == oracles.euler_rank(3, 3) == 1
    s1_colim = GroupoidPresentation(("A", "B"), (Generator("e1", "A", "B"), Generator("e2", "A", "B")))
    vg = vertex_group(s1_colim, "A")
    assert len(vg.generators) == 1 and vg.relators == ()
    assert vertex_group(point(), "*").generators == ()


def test_spanning_tree_tie_break():
    g = GroupoidPresentation(("a", "b", "c"), (Generator("q", "a", "c"), Generator("p", "a", "b"),
                                               Generator("r", "a", "b")))
    order, paths = spanning_tree(g, "a")
    assert order == ["a", "b", "c"]
    assert paths["b"].letters == (("p", 1),)


@st.composite
def random_graphs(draw):
    v = draw(st.integers(1, 8))
    objs = [f"v{i}" for i in range(v)]
    edges = draw(st.lists(st.tuples(st.integers(0, v - 1), st.integers(0, v - 1)), max_size=14))
    gens = tuple(Generator(f"g{i}", objs[a], objs[b]) for i, (a, b) in enumerate(edges))
    return GroupoidPresentation(tuple(objs), gens)


@given(random_graphs())
def test_relation_free_rank_is_euler_characteristic(g):
    comps = connected_components(g)
    for comp in comps:
        members = set(comp)
        edges = sum(1 for e in g.generators if e.src in members)
        vg = vertex_group(g, comp[0])
        assert vg.relators == ()
        assert len(vg.generators) == oracles.euler_rank(len(comp), edges)
        assert abelianization(vg).free_rank == len(vg.generators)


def test_identity_needs_no_word_problem():
    g = GroupoidPresentation(("*",), (Generator("x", "*", "*"), Generator("y", "*", "*")))
    w = g.word("*", ["x", "y", "x^-1", "y^-1"])
    hard = GroupoidPresentation(g.objects, g.generators, (Relation(w, g.word("*")),))
    # relations map to themselves syntactically, so even a tiny fuel budget suffices
    assert validate_functor(identity_functor(hard), fuel=5) == []
