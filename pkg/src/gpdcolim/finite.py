"""Explicit finite groupoids, functors into them, and natural transformations.

A finite groupoid is stored as a disjoint union of connected pieces, each a
finite group ``G`` acting on a set of objects: the morphisms ``x -> y`` of a
piece are the triples ``(x, y, g)`` with ``g`` in ``G`` and composition
multiplies group elements.  Every finite groupoid is isomorphic to one of
these.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, NamedTuple, Sequence

from .errors import FuelExhausted, PresentationError, SchemaError
from .groupoid import Generator, GroupoidPresentation, Relation, Word, connected_components, spanning_tree


class FiniteGroup:
    """A finite group given by its multiplication table; 0 is the identity."""

    def __init__(self, mul: Sequence[Sequence[int]], name: str = "G"):
        self.mul = [list(row) for row in mul]
        self.order = len(self.mul)
        self.name = name
        self.inv = [next(b for b in range(self.order) if self.mul[a][b] == 0) for a in range(self.order)]

    @classmethod
    def trivial(cls) -> "FiniteGroup":
        return cls([[0]], "1")

    @classmethod
    def cyclic(cls, m: int) -> "FiniteGroup":
        if m < 1:
            raise ValueError("cyclic group order must be positive")
        if m == 1:
            return cls.trivial()
        return cls([[(a + b) % m for b in range(m)] for a in range(m)], f"Z/{m}")

    @classmethod
    def from_permutations(cls, perms: Sequence[Sequence[int]], name: str = "G") -> "FiniteGroup":
        """The permutation group generated by ``perms`` (images of 0..d-1)."""
        perms = [tuple(p) for p in perms]
        degree = len(perms[0]) if perms else 1
        ident = tuple(range(degree))
        for p in perms:
            if sorted(p) != list(ident):
                raise SchemaError(f"{p} is not a permutation of 0..{degree - 1}")
        elements = [ident]
        index = {ident: 0}
        frontier = [ident]
        while frontier:
            nxt = []
            for a in frontier:
                for p in perms:
                    c = tuple(a[p[i]] for i in range(degree))
                    if c not in index:
                        index[c] = len(elements)
                        elements.append(c)
                        nxt.append(c)
            frontier = nxt
        # a*b acts as "apply b then a"
        mul = [[index[tuple(a[b[i]] for i in range(degree))] for b in elements] for a in elements]
        return cls(mul, name)

    def is_abelian(self) -> bool:
        return all(self.mul[a][b] == self.mul[b][a] for a in range(self.order) for b in range(self.order))

    def conjugate(self, g: int, by: int) -> int:
        return self.mul[self.mul[by][g]][self.inv[by]]

    def __repr__(self):
        return f"FiniteGroup({self.name})"


class Morphism(NamedTuple):
    src: str
    dst: str
    g: int


@dataclass
class FiniteGroupoid:
    """Connected pieces ``(objects, group)``; the first object of a piece is its base."""

    pieces: list
    name: str = "H"

    def __post_init__(self):
        self.pieces = [(tuple(objs), grp) for objs, grp in self.pieces]
        self.objects = tuple(x for objs, _ in self.pieces for x in objs)
        if len(set(self.objects)) != len(self.objects):
            raise SchemaError("duplicate objects in finite groupoid")
        self.piece_of = {x: i for i, (objs, _) in enumerate(self.pieces) for x in objs}
        self._out = {x: [Morphism(x, y, g) for y in self.pieces[self.piece_of[x]][0]
                         for g in range(self.group_of(x).order)] for x in self.objects}
        self._in = {y: [Morphism(x, y, g) for x in self.pieces[self.piece_of[y]][0]
                        for g in range(self.group_of(y).order)] for y in self.objects}

    def group_of(self, x) -> FiniteGroup:
        return self.pieces[self.piece_of[x]][1]

    def identity(self, x) -> Morphism:
        return Morphism(x, x, 0)

    def then(self, a: Morphism, b: Morphism) -> Morphism:
        """``b . a``: first ``a`` then ``b``."""
        if a.dst != b.src:
            raise PresentationError(f"cannot compose {a} then {b}")
        return Morphism(a.src, b.dst, self.group_of(a.src).mul[b.g][a.g])

    def inverse(self, a: Morphism) -> Morphism:
        return Morphism(a.dst, a.src, self.group_of(a.src).inv[a.g])

    def hom(self, x, y) -> list:
        if self.piece_of[x] != self.piece_of[y]:
            return []
        return [Morphism(x, y, g) for g in range(self.group_of(x).order)]

    def out_of(self, x) -> list:
        return self._out[x]

    def into(self, y) -> list:
        return self._in[y]

    def morphism_count(self) -> int:
        return sum(len(objs) ** 2 * grp.order for objs, grp in self.pieces)

    def presentation(self) -> GroupoidPresentation:
        """A presentation of this groupoid; :meth:`presented_generator` reads its generators back."""
        gens, rels = [], []
        pres_objects = list(self.objects)
        for i, (objs, grp) in enumerate(self.pieces):
            base = objs[0]
            for y in objs[1:]:
                gens.append(Generator(f"p{i}.t[{y}]", base, y))
            for a in range(1, grp.order):
                gens.append(Generator(f"p{i}.g{a}", base, base))
        pres0 = GroupoidPresentation(pres_objects, gens)
        for i, (objs, grp) in enumerate(self.pieces):
            base = objs[0]
            for a in range(1, grp.order):
                for b in range(1, grp.order):
                    lhs = pres0.word(base, [(f"p{i}.g{a}", 1), (f"p{i}.g{b}", 1)])
                    c = grp.mul[b][a]
                    rhs = pres0.word(base, [(f"p{i}.g{c}", 1)] if c else [])
                    rels.append((lhs, rhs))
        return GroupoidPresentation(pres_objects, gens, [Relation(l, r) for l, r in rels])

    def presented_generator(self, gen_id: str) -> Morphism:
        piece, rest = gen_id.split(".", 1)
        objs, _ = self.pieces[int(piece[1:])]
        if rest.startswith("t["):
            return Morphism(objs[0], rest[2:-1], 0)
        return Morphism(objs[0], objs[0], int(rest[1:]))

    def __repr__(self):
        return f"FiniteGroupoid({self.name})"


def point() -> FiniteGroupoid:
    return FiniteGroupoid([(("*",), FiniteGroup.trivial())], "1")


def one_object(group: FiniteGroup, obj: str = "*") -> FiniteGroupoid:
    return FiniteGroupoid([((obj,), group)], group.name)


@dataclass
class FiniteFunctor:
    """A functor from a presented groupoid into a finite groupoid."""

    obj: dict
    gen: dict = field(default_factory=dict)

    __hash__ = None

    def key(self) -> tuple:
        return (tuple(sorted(self.obj.items())), tuple(sorted(self.gen.items())))

    def letter(self, h: FiniteGroupoid, letter) -> Morphism:
        m = self.gen[letter[0]]
        return m if letter[1] == 1 else h.inverse(m)

    def on_word(self, h: FiniteGroupoid, w: Word) -> Morphism:
        acc = h.identity(self.obj[w.start])
        for letter in w.letters:
            acc = h.then(acc, self.letter(h, letter))
        return acc


class _Layout:
    """Spanning forest of a presentation, used to order backtracking."""

    def __init__(self, g: GroupoidPresentation):
        self.g = g
        self.components = []
        steps = []
        tree = set()
        for comp in connected_components(g):
            base = comp[0]
            order, paths = spanning_tree(g, base)
            self.components.append((base, order, paths))
            steps.append(("base", base))
            for x in order[1:]:
                gid, sign = paths[x].letters[-1]
                tree.add(gid)
                e = g.gen(gid)
                parent = e.src if sign == 1 else e.dst
                steps.append(("tree", gid, sign, parent, x))
        for e in g.generators:
            if e.id not in tree:
                steps.append(("free", e.id))
        self.tree = tree
        self.steps = steps
        position = {}
        for i, step in enumerate(steps):
            if step[0] != "base":
                position[step[1]] = i
        self.checks = [[] for _ in steps]
        for rel in g.relations:
            used = [position[x[0]] for x in rel.lhs.letters + rel.rhs.letters]
            at = max(used) if used else 0
            self.checks[at].append(rel)


def enumerate_functors(g: GroupoidPresentation, h: FiniteGroupoid, fuel: int = 10000) -> list[FiniteFunctor]:
    """Every functor ``g -> h``, by backtracking along a spanning forest of ``g``.

    Relations are checked as soon as all their generators have images.
    Raises FuelExhausted when more than ``fuel`` search nodes are visited.
    """
    layout = _Layout(g)
    steps, checks = layout.steps, layout.checks
    obj: dict = {}
    gen: dict = {}
    out = []
    spent = 0

    def holds(rel) -> bool:
        F = FiniteFunctor(obj, gen)
        return F.on_word(h, rel.lhs) == F.on_word(h, rel.rhs)

    def visit(i):
        nonlocal spent
        spent += 1
        if spent > fuel:
            raise FuelExhausted(f"functor enumeration exceeded fuel {fuel}", spent)
        if i == len(steps):
            out.append(FiniteFunctor(dict(obj), dict(gen)))
            return
        step = steps[i]
        if step[0] == "base":
            for y in h.objects:
                obj[step[1]] = y
                visit(i + 1)
            del obj[step[1]]
            return
        if step[0] == "tree":
            _, gid, sign, parent, child = step
            cands = h.out_of(obj[parent]) if sign == 1 else h.into(obj[parent])
            for m in cands:
                gen[gid] = m
                obj[child] = m.dst if sign == 1 else m.src
                if all(holds(r) for r in checks[i]):
                    visit(i + 1)
            del gen[gid], obj[child]
            return
        gid = step[1]
        e = g.gen(gid)
        for m in h.hom(obj[e.src], obj[e.dst]):
            gen[gid] = m
            if all(holds(r) for r in checks[i]):
                visit(i + 1)
        gen.pop(gid, None)

    visit(0)
    return out



@dataclass
class Skeleton:
    """One functor per isomorphism class, with its automorphism group."""

    layout: "_Layout"
    reps: list            # FiniteFunctor per class
    forms: list           # canonical_form of each representative
    automorphisms: list   # list of natural automorphisms per class

    @property
    def class_count(self) -> int:
        return len(self.reps)

    @property
    def aut_sizes(self) -> list:
        return [len(a) for a in self.automorphisms]

    def index(self) -> dict:
        return {f: i for i, f in enumerate(self.forms)}


def functor_skeleton(g: GroupoidPresentation, h: FiniteGroupoid, fuel: int = 10000) -> Skeleton:
    """Isomorphism classes of ``Hom(g, h)`` without listing every functor.

    Every functor is isomorphic to one sending each component of ``g`` to the
    base of a single piece of ``h`` with all spanning-tree arrows mapped to
    identities.  Only those normalised functors are enumerated; they are then
    deduplicated by :func:`canonical_form`, which is a complete invariant.
    """
    layout = _Layout(g)
    steps, checks = layout.steps, layout.checks
    bases = [objs[0] for objs, _ in h.pieces]
    obj: dict = {}
    gen: dict = {}
    forms: dict = {}
    spent = 0

    def holds(rel) -> bool:
        F = FiniteFunctor(obj, gen)
        return F.on_word(h, rel.lhs) == F.on_word(h, rel.rhs)

    def visit(i):
        nonlocal spent
        spent += 1
        if spent > fuel:
            raise FuelExhausted(f"skeleton enumeration exceeded fuel {fuel}", spent)
        if i == len(steps):
            F = FiniteFunctor(dict(obj), dict(gen))
            forms.setdefault(canonical_form(layout, h, F), F)
            return
        step = steps[i]
        if step[0] == "base":
            for y in bases:
                obj[step[1]] = y
                visit(i + 1)
            del obj[step[1]]
            return
        if step[0] == "tree":
            _, gid, _, parent, child = step
            gen[gid] = h.identity(obj[parent])
            obj[child] = obj[parent]
            if all(holds(r) for r in checks[i]):
                visit(i + 1)
            del gen[gid], obj[child]
            return
        gid = step[1]
        e = g.gen(gid)
        for m in h.hom(obj[e.src], obj[e.dst]):
            gen[gid] = m
            if all(holds(r) for r in checks[i]):
                visit(i + 1)
        gen.pop(gid, None)

    visit(0)
    keys = sorted(forms)
    reps = [forms[k] for k in keys]
    auts = [natural_transformations(g, h, F, F, layout=layout) for F in reps]
    return Skeleton(layout, reps, keys, auts)


def pull_back(F: FiniteFunctor, phi, h: FiniteGroupoid) -> FiniteFunctor:
    """``F . phi`` for a presented functor ``phi`` into the domain of ``F``."""
    return FiniteFunctor({x: F.obj[y] for x, y in phi.object_map.items()},
                         {e: F.on_word(h, w) for e, w in phi.generator_map.items()})


def canonical_form(layout: "_Layout", h: FiniteGroupoid, F: FiniteFunctor) -> tuple:
    """A complete invariant of ``F`` up to natural isomorphism.

    Each component is conjugated so that its objects land on the base of
    their piece and its tree arrows become identities; what is left is the
    tuple of group elements on the other generators, minimised over the
    choices at the component's base.
    """
    g = layout.g
    out = []
    for base, order, paths in layout.components:
        p = h.piece_of[F.obj[base]]
        target = h.pieces[p][0][0]
        free = [e for e in g.generators if e.src in paths and e.id not in layout.tree]
        best = None
        for m in h.hom(F.obj[base], target):
            eta = {base: m}
            for x in order[1:]:
                gid, sign = paths[x].letters[-1]
                e = g.gen(gid)
                if sign == 1:
                    eta[x] = h.then(h.inverse(F.gen[gid]), eta[e.src])
                else:
                    eta[x] = h.then(F.gen[gid], eta[e.dst])
            key = tuple(h.then(h.then(h.inverse(eta[e.src]), F.gen[e.id]), eta[e.dst]).g for e in free)
            if best is None or key < best:
                best = key
        out.append((p, best))
    return tuple(out)


def natural_transformations(g: GroupoidPresentation, h: FiniteGroupoid, F: FiniteFunctor,
                            G: FiniteFunctor, first_only: bool = False, layout: _Layout | None = None) -> list[dict]:
    """All ``eta: F => G``; each is a dict ``object -> morphism F(x) -> G(x)``."""
    layout = layout or _Layout(g)
    per_component = []
    for base, order, paths in layout.components:
        found = []
        for start in h.hom(F.obj[base], G.obj[base]):
            eta = {base: start}
            for x in order[1:]:
                gid, sign = paths[x].letters[-1]
                e = g.gen(gid)
                if sign == 1:
                    # e: parent -> x;  eta_x = G(e) . eta_parent . F(e)^-1
                    eta[x] = h.then(h.then(h.inverse(F.gen[gid]), eta[e.src]), G.gen[gid])
                else:
                    # e: x -> parent;  eta_x = G(e)^-1 . eta_parent . F(e)
                    eta[x] = h.then(h.then(F.gen[gid], eta[e.dst]), h.inverse(G.gen[gid]))
            if _is_natural(g, h, F, G, eta, order):
                found.append(eta)
                if first_only:
                    break
        if not found:
            return []
        per_component.append(found)
    results = [{}]
    for found in per_component:
        results = [dict(r, **eta) for r in results for eta in found]
        if first_only:
            results = results[:1]
    return results


def _is_natural(g, h, F, G, eta, objects) -> bool:
    objs = set(objects)
    for e in g.generators:
        if e.src in objs:
            if h.then(F.gen[e.id], eta[e.dst]) != h.then(eta[e.src], G.gen[e.id]):
                return False
    return True


@dataclass
class Classification:
    """Isomorphism classes of an explicitly enumerated groupoid."""

    classes: list          # lists of object indices, representative first
    class_of: list         # object index -> class index
    connecting: list       # object index -> isomorphism rep -> object
    aut_sizes: list        # class index -> |Aut(rep)|
    automorphisms: list    # class index -> list of automorphisms of rep

    @property
    def class_count(self) -> int:
        return len(self.classes)

    @property
    def morphism_count(self) -> int:
        return sum(len(c) ** 2 * a for c, a in zip(self.classes, self.aut_sizes))


def classify(objects: Sequence, bucket: Callable, find_iso: Callable, automorphisms: Callable) -> Classification:
    """Group ``objects`` into isomorphism classes.

    ``bucket(x)`` must be an isomorphism invariant; ``find_iso(x, y)``
    returns one isomorphism or None; ``automorphisms(x)`` lists ``Aut(x)``.
    """
    classes, class_of, connecting = [], [None] * len(objects), [None] * len(objects)
    reps_by_bucket: dict = {}
    for i, x in enumerate(objects):
        b = bucket(x)
        for ci in reps_by_bucket.get(b, ()):
            iso = find_iso(objects[classes[ci][0]], x)
            if iso is not None:
                classes[ci].append(i)
                class_of[i] = ci
                connecting[i] = iso
                break
        else:
            ci = len(classes)
            classes.append([i])
            class_of[i] = ci
            reps_by_bucket.setdefault(b, []).append(ci)
    auts = [automorphisms(objects[c[0]]) for c in classes]
    for c, a in zip(classes, auts):
        connecting[c[0]] = a[0] if a else None
    return Classification(classes, class_of, connecting, [len(a) for a in auts], auts)


class FunctorGroupoid:
    """The groupoid ``Hom(g, h)`` of functors and natural isomorphisms."""

    def __init__(self, g: GroupoidPresentation, h: FiniteGroupoid, fuel: int = 10000):
        self.g, self.h = g, h
        self.layout = _Layout(g)
        self.objects = enumerate_functors(g, h, fuel)
        self._classification = None

    def morphisms(self, F: FiniteFunctor, G: FiniteFunctor, first_only: bool = False) -> list[dict]:
        return natural_transformations(self.g, self.h, F, G, first_only, self.layout)

    def classification(self) -> Classification:
        if self._classification is None:
            h = self.h

            def bucket(F):
                return canonical_form(self.layout, h, F)

            def find(F, G):
                found = self.morphisms(F, G, first_only=True)
                return found[0] if found else None

            self._classification = classify(self.objects, bucket, find, lambda F: self.morphisms(F, F))
        return self._classification


def group_from_json(value, where: str = "group") -> FiniteGroup:
    """``"1"``, ``"Z/m"`` or ``{"permutations": [[...], ...]}``."""
    if isinstance(value, str):
        text = value.replace(" ", "")
        if text in ("1", "trivial"):
            return FiniteGroup.trivial()
        if text.startswith("Z/") and text[2:].isdigit() and int(text[2:]) >= 1:
            return FiniteGroup.cyclic(int(text[2:]))
        raise SchemaError(f"{where}: unknown group {value!r} (use \"1\", \"Z/m\" or permutations)")
    if isinstance(value, dict) and isinstance(value.get("permutations"), list):
        return FiniteGroup.from_permutations(value["permutations"], value.get("name", "G"))
    raise SchemaError(f"{where}: expected a group name or {{\"permutations\": ...}}")


def finite_groupoid_from_json(data, name: str = "H") -> FiniteGroupoid:
    if not isinstance(data, dict) or not isinstance(data.get("components"), list):
        raise SchemaError("target: expected an object with a \"components\" list")
    pieces = []
    for i, comp in enumerate(data["components"]):
        where = f"target.components[{i}]"
        if not isinstance(comp, dict) or not isinstance(comp.get("objects"), list) or not comp["objects"]:
            raise SchemaError(f"{where}: expected a non-empty \"objects\" list")
        pieces.append(([str(x) for x in comp["objects"]], group_from_json(comp.get("group", "1"), f"{where}.group")))
    return FiniteGroupoid(pieces, data.get("name", name))
