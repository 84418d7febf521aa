"""Descent data for a diagram and a finite target groupoid.

A descent object over a view is a family of functors ``X_S: Phi(S) -> H``
with, for each cover ``S < T``, a natural isomorphism
``A_{S,T}: X_S => X_T . Phi_{S,T}`` such that the two composites around
every diamond agree.  Morphisms are families of natural transformations
``f_S: X_S => Y_S`` commuting with the transitions.

Enumeration runs from the largest subsets down.  On a maximal element every
functor is tried.  Below that, the transition to the first upper cover is
chosen freely object by object and determines ``X_S``; transitions to the
other upper covers are forced by a diamond when one exists and enumerated
otherwise.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import product

from .diagram import Diagram, ensure_strict, functor_between
from .errors import FuelExhausted, ViewError
from .finite import (Classification, FiniteFunctor, FiniteGroupoid, _Layout, canonical_form,
                     classify, enumerate_functors, natural_transformations, pull_back)
from .poset import PosetView, Subset, canonical_chain, covers, diamonds, partition_b


@dataclass
class DescentObject:
    X: dict        # Subset -> FiniteFunctor
    A: dict        # (S, T) cover -> {object of Phi(S): Morphism}

    __hash__ = None

    def key(self) -> tuple:
        xs = tuple((s.key, self.X[s].key()) for s in sorted(self.X))
        As = tuple((s.key, t.key, tuple(sorted(a.items()))) for (s, t), a in
                   sorted(self.A.items(), key=lambda kv: (kv[0][0].key, kv[0][1].key)))
        return (xs, As)


class DescentContext:
    """Everything about ``(d, view, h)`` that enumeration and checks reuse."""

    def __init__(self, d: Diagram, view: PosetView, h: FiniteGroupoid, force: bool = False):
        if not view.issubview(d.view):
            raise ViewError(f"{view.describe()} is not inside {d.view.describe()}")
        ensure_strict(d, force=force)
        self.d, self.view, self.h = d, view, h
        self.order = sorted(view.members, key=lambda s: s.key, reverse=True)
        self.ups = {s: view.upper_covers(s) for s in view}
        self.covers = [(c.lower, c.upper) for c in covers(view)]
        self.phi = {(s, t): functor_between(d, s, t) for s, t in self.covers}
        self.layout = {s: _Layout(d.groupoids[s]) for s in view}
        self.diamonds_at: dict = {s: [] for s in view}
        for dia in diamonds(view):
            self.diamonds_at[dia[0]].append(dia)
        self.maximal = [s for s in self.order if not self.ups[s]]
        self._groupoids = {s: d.groupoids[s] for s in view}
        self._between: dict = {}
        self._chains: dict = {}

    def g(self, s):
        return self._groupoids[s]

    def between(self, s, t):
        key = (s, t)
        f = self._between.get(key)
        if f is None:
            f = self._between[key] = functor_between(self.d, s, t)
        return f

    def pull(self, F: FiniteFunctor, s, t) -> FiniteFunctor:
        return pull_back(F, self.between(s, t), self.h)

    def identity_on(self, F: FiniteFunctor) -> dict:
        return {x: self.h.identity(y) for x, y in F.obj.items()}

    # -- composite transitions -------------------------------------------

    def transition(self, D: DescentObject, s: Subset, t: Subset) -> dict:
        """``A_{s,t}`` for any ``s <= t`` in the view, composed along the canonical chain."""
        h = self.h
        steps = self._chains.get((s, t))
        if steps is None:
            chain = canonical_chain(s, t)
            steps = self._chains[(s, t)] = [((a, b), self.phi[(a, b)].object_map) for a, b in zip(chain, chain[1:])]
        out = {}
        xs = D.X[s].obj
        for x in self.g(s).objects:
            acc = h.identity(xs[x])
            cur = x
            for key, omap in steps:
                acc = h.then(acc, D.A[key][cur])
                cur = omap[cur]
            out[x] = acc
        return out


# -- validation ----------------------------------------------------------------

def _functor_problems(ctx, s, F: FiniteFunctor) -> list[str]:
    h, g = ctx.h, ctx.g(s)
    out = []
    for e in g.generators:
        m = F.gen.get(e.id)
        if m is None or (m.src, m.dst) != (F.obj[e.src], F.obj[e.dst]):
            out.append(f"X_{s} sends {e.id} to {m}, which does not match its endpoints")
    if out:
        return out
    for i, rel in enumerate(g.relations):
        if F.on_word(h, rel.lhs) != F.on_word(h, rel.rhs):
            out.append(f"X_{s} breaks relation {i}")
    return out


def _natural_problems(ctx, s, F, G, eta, label) -> list[str]:
    h, g = ctx.h, ctx.g(s)
    out = []
    for x in g.objects:
        m = eta.get(x)
        if m is None or (m.src, m.dst) != (F.obj[x], G.obj[x]):
            out.append(f"{label} at {x} has the wrong endpoints")
    if out:
        return out
    for e in g.generators:
        if h.then(F.gen[e.id], eta[e.dst]) != h.then(eta[e.src], G.gen[e.id]):
            out.append(f"{label} is not natural at {e.id}")
    return out


def validate_descent(ctx: DescentContext, D: DescentObject) -> list[str]:
    """Empty list when ``D`` is a descent object; otherwise the violated conditions."""
    out = []
    for s in ctx.view:
        if s not in D.X:
            return [f"no functor at {s}"]
        out += _functor_problems(ctx, s, D.X[s])
    if out:
        return out
    for s, t in ctx.covers:
        if (s, t) not in D.A:
            return [f"no transition for {s}<{t}"]
        out += _natural_problems(ctx, s, D.X[s], ctx.pull(D.X[t], s, t), D.A[(s, t)], f"A_{s},{t}")
    if out:
        return out
    h = ctx.h
    for s, t1, t2, w in diamonds(ctx.view):
        for x in ctx.g(s).objects:
            y1, y2 = ctx.phi[(s, t1)].object_map[x], ctx.phi[(s, t2)].object_map[x]
            lhs = h.then(D.A[(s, t1)][x], D.A[(t1, w)][y1])
            rhs = h.then(D.A[(s, t2)][x], D.A[(t2, w)][y2])
            if lhs != rhs:
                out.append(f"cocycle fails on {s}<{t1},{t2}<{w} at {x}")
    return out


def validate_descent_morphism(ctx: DescentContext, X: DescentObject, Y: DescentObject, f: dict) -> list[str]:
    out = []
    h = ctx.h
    for s in ctx.view:
        out += _natural_problems(ctx, s, X.X[s], Y.X[s], f[s], f"f_{s}")
    if out:
        return out
    for s, t in ctx.covers:
        phi = ctx.phi[(s, t)]
        for x in ctx.g(s).objects:
            if h.then(f[s][x], Y.A[(s, t)][x]) != h.then(X.A[(s, t)][x], f[t][phi.object_map[x]]):
                out.append(f"square for {s}<{t} fails at {x}")
    return out


# -- enumeration -----------------------------------------------------------------

class _Fuel:
    def __init__(self, fuel):
        self.fuel, self.spent = fuel, 0

    def tick(self, what):
        self.spent += 1
        if self.spent > self.fuel:
            raise FuelExhausted(f"{what} exceeded fuel {self.fuel}", self.spent)


def enumerate_descent(ctx: DescentContext, fuel: int = 10000) -> list[DescentObject]:
    h = ctx.h
    meter = _Fuel(fuel)
    functors_at = {s: enumerate_functors(ctx.g(s), h, fuel) for s in ctx.maximal}
    out = []
    X: dict = {}
    A: dict = {}

    def cocycle_ok(s) -> bool:
        for _, t1, t2, w in ctx.diamonds_at[s]:
            p1, p2 = ctx.phi[(s, t1)].object_map, ctx.phi[(s, t2)].object_map
            for x in ctx.g(s).objects:
                if h.then(A[(s, t1)][x], A[(t1, w)][p1[x]]) != h.then(A[(s, t2)][x], A[(t2, w)][p2[x]]):
                    return False
        return True

    def other_covers(i, s, ups, k):
        if k == len(ups):
            if cocycle_ok(s):
                visit(i + 1)
            return
        t = ups[k]
        t1 = ups[0]
        w = t1.union(t)
        G = ctx.pull(X[t], s, t)
        if w in ctx.view:
            p1, p2 = ctx.phi[(s, t1)].object_map, ctx.phi[(s, t)].object_map
            forced = {x: h.then(h.then(A[(s, t1)][x], A[(t1, w)][p1[x]]), h.inverse(A[(t, w)][p2[x]]))
                      for x in ctx.g(s).objects}
            options = [forced] if not _natural_problems(ctx, s, X[s], G, forced, "") else []
        else:
            options = natural_transformations(ctx.g(s), h, X[s], G, layout=ctx.layout[s])
        for eta in options:
            meter.tick("descent enumeration")
            A[(s, t)] = eta
            other_covers(i, s, ups, k + 1)
        A.pop((s, t), None)

    def visit(i):
        meter.tick("descent enumeration")
        if i == len(ctx.order):
            out.append(DescentObject(dict(X), {k: dict(v) for k, v in A.items()}))
            return
        s = ctx.order[i]
        ups = ctx.ups[s]
        if not ups:
            for F in functors_at[s]:
                X[s] = F
                visit(i + 1)
            X.pop(s, None)
            return
        t1 = ups[0]
        G = ctx.pull(X[t1], s, t1)
        g = ctx.g(s)
        objs = g.objects
        for choice in product(*(h.into(G.obj[x]) for x in objs)):
            meter.tick("descent enumeration")
            a = dict(zip(objs, choice))
            X[s] = FiniteFunctor({x: a[x].src for x in objs},
                                 {e.id: h.then(h.then(a[e.src], G.gen[e.id]), h.inverse(a[e.dst]))
                                  for e in g.generators})
            A[(s, t1)] = a
            other_covers(i, s, ups, 1)
        X.pop(s, None)
        A.pop((s, t1), None)

    visit(0)
    return out


def descent_morphisms(ctx: DescentContext, X: DescentObject, Y: DescentObject,
                      first_only: bool = False) -> list[dict]:
    """All morphisms ``X -> Y``; each is ``{S: {x: Morphism}}``."""
    h = ctx.h
    cands = []
    for s in ctx.maximal:
        found = natural_transformations(ctx.g(s), h, X.X[s], Y.X[s], layout=ctx.layout[s])
        if not found:
            return []
        cands.append(found)
    out = []
    for pick in product(*cands):
        f = dict(zip(ctx.maximal, pick))
        ok = True
        for s in ctx.order:
            ups = ctx.ups[s]
            if not ups:
                continue
            t1 = ups[0]
            p1 = ctx.phi[(s, t1)].object_map
            ax, ay = X.A[(s, t1)], Y.A[(s, t1)]
            fs = {x: h.then(h.then(ax[x], f[t1][p1[x]]), h.inverse(ay[x])) for x in ctx.g(s).objects}
            for t in ups[1:]:
                pt = ctx.phi[(s, t)].object_map
                bx, by = X.A[(s, t)], Y.A[(s, t)]
                if any(h.then(fs[x], by[x]) != h.then(bx[x], f[t][pt[x]]) for x in fs):
                    ok = False
                    break
            if not ok:
                break
            f[s] = fs
        if ok:
            out.append(f)
            if first_only:
                break
    return out


def compose_descent_morphisms(ctx: DescentContext, f: dict, g: dict) -> dict:
    """``g . f`` (first ``f``)."""
    return {s: {x: ctx.h.then(f[s][x], g[s][x]) for x in f[s]} for s in f}


class DescentCategory:
    """The groupoid of descent objects for ``(d, view, h)``, enumerated exhaustively."""

    def __init__(self, d: Diagram, view: PosetView | None, h: FiniteGroupoid, fuel: int = 10000,
                 force: bool = False, bucket: str = "pieces"):
        self.ctx = DescentContext(d, view or d.view, h, force)
        self.objects = enumerate_descent(self.ctx, fuel)
        self.bucket = bucket
        self._classification = None
        self._gp = None

    @property
    def h(self):
        return self.ctx.h

    def morphisms(self, X, Y, first_only=False) -> list[dict]:
        return descent_morphisms(self.ctx, X, Y, first_only)

    def grothendieck(self):
        if self._gp is None:
            from .twocolim import grothendieck
            self._gp = grothendieck(self.ctx.d, self.ctx.view, force=True)
        return self._gp

    def classification(self) -> Classification:
        if self._classification is None:
            ctx = self.ctx
            if self.bucket == "canonical":
                gp = self.grothendieck()
                layout = _Layout(gp.groupoid)

                def bucket(D):
                    return canonical_form(layout, ctx.h, functor_from_descent(gp, D))
            else:
                def bucket(D):
                    return tuple(ctx.h.piece_of[D.X[s].obj[x]] for s in ctx.order for x in ctx.g(s).objects)

            def find(X, Y):
                found = self.morphisms(X, Y, first_only=True)
                return found[0] if found else None

            self._classification = classify(self.objects, bucket, find, lambda X: self.morphisms(X, X))
        return self._classification


def descent_category(d: Diagram, view: PosetView | None, h: FiniteGroupoid, fuel: int = 10000,
                     force: bool = False) -> DescentCategory:
    return DescentCategory(d, view, h, fuel, force)


# -- K and J -----------------------------------------------------------------------

def functor_from_descent(gp, D: DescentObject) -> FiniteFunctor:
    """J: the functor on the Grothendieck presentation defined by ``D``."""
    obj, gen = {}, {}
    for (s, x), label in gp.objects.items():
        obj[label] = D.X[s].obj[x]
    for (s, e), gid in gp.lifted.items():
        gen[gid] = D.X[s].gen[e]
    for (s, t, x), gid in gp.lambda_arrows.items():
        gen[gid] = D.A[(s, t)][x]
    return FiniteFunctor(obj, gen)


def descent_from_functor(gp, theta: FiniteFunctor) -> DescentObject:
    """K: restrict ``theta`` along the insertions and the lambda arrows."""
    X: dict = {}
    for (s, x), label in gp.objects.items():
        X.setdefault(s, FiniteFunctor({}, {})).obj[x] = theta.obj[label]
    for s in gp.view:
        X.setdefault(s, FiniteFunctor({}, {}))
    for (s, e), gid in gp.lifted.items():
        X[s].gen[e] = theta.gen[gid]
    A: dict = {}
    for (s, t, x), gid in gp.lambda_arrows.items():
        A.setdefault((s, t), {})[x] = theta.gen[gid]
    return DescentObject(X, A)


def transformation_from_descent(gp, f: dict) -> dict:
    return {label: f[s][x] for (s, x), label in gp.objects.items()}


def descent_from_transformation(gp, eta: dict) -> dict:
    out: dict = {s: {} for s in gp.view}
    for (s, x), label in gp.objects.items():
        out[s][x] = eta[label]
    return out


# -- cones and gamma -------------------------------------------------------------------

def is_strict_cone(ctx: DescentContext, cone: dict) -> bool:
    for s, t in ctx.covers:
        G = ctx.pull(cone[t], s, t)
        if G.obj != cone[s].obj or G.gen != cone[s].gen:
            return False
    return True


def enumerate_cones(ctx: DescentContext, fuel: int = 10000) -> list[dict]:
    """Families ``F_S: Phi(S) -> H`` with ``F_T . Phi_{S,T} = F_S`` on the nose."""
    meter = _Fuel(fuel)
    functors_at = {s: enumerate_functors(ctx.g(s), ctx.h, fuel) for s in ctx.maximal}
    out = []
    F: dict = {}

    def visit(i):
        meter.tick("cone enumeration")
        if i == len(ctx.order):
            out.append(dict(F))
            return
        s = ctx.order[i]
        ups = ctx.ups[s]
        if not ups:
            for G in functors_at[s]:
                F[s] = G
                visit(i + 1)
            F.pop(s, None)
            return
        G = ctx.pull(F[ups[0]], s, ups[0])
        for t in ups[1:]:
            other = ctx.pull(F[t], s, t)
            if other.obj != G.obj or other.gen != G.gen:
                return
        F[s] = G
        visit(i + 1)
        F.pop(s, None)

    visit(0)
    return out


def gamma_embed(ctx: DescentContext, cone: dict) -> DescentObject:
    """The descent object of a strict cone: same functors, identity transitions."""
    if not is_strict_cone(ctx, cone):
        raise ValueError("the family is not a strict cone")
    return DescentObject(dict(cone), {(s, t): ctx.identity_on(cone[s]) for s, t in ctx.covers})


# -- the pullback P and the functors Gamma, Delta ----------------------------------------

@dataclass
class PObject:
    top: FiniteFunctor            # on Phi({1..n-1})
    side: DescentObject           # over b'(n-1)
    zeta: dict                    # U in b(n-1) -> {x: Morphism}

    __hash__ = None


@dataclass
class PMorphism:
    top: dict                     # {x: Morphism}
    side: dict                    # {S: {x: Morphism}} over b'(n-1)


class Pullback:
    """The 2-pullback of ``Hom(Phi({1..n-1}), H) -> 2lim over b(n-1) <- 2lim over b'(n-1)``."""

    def __init__(self, d: Diagram, h: FiniteGroupoid, fuel: int = 10000, force: bool = False):
        n = d.n
        if n < 2 or d.view != PosetView.full(n):
            raise ViewError("the pullback needs a diagram over the full poset with n >= 2")
        self.d, self.h, self.n = d, h, n
        lower, upper, top = partition_b(n)
        self.lower, self.top = lower, top
        self.full = DescentContext(d, d.view, h, force)
        self.side_cat = DescentCategory(d, upper, h, fuel, force=True)
        self.side = self.side_cat.ctx
        self.low_order = sorted(lower.members, key=lambda s: s.key, reverse=True)
        self.top_layout = _Layout(d.groupoids[top])
        self._fuel = fuel
        self.objects = self._enumerate(fuel)
        self._classification = None

    def plus(self, u):
        return u.add(self.n)

    def _zeta_source(self, p_top, u):
        return pull_back(p_top, self.full.between(u, self.top), self.h)

    def _zeta_target(self, side, u):
        return pull_back(side.X[self.plus(u)], self.full.between(u, self.plus(u)), self.h)

    def _triangle_value(self, side, zeta, u, v, x):
        """``zeta_U(x)`` as forced by ``zeta_V`` and ``beta_{U+,V+}`` for ``U <= V``."""
        h = self.h
        y = self.full.between(u, v).object_map[x]
        z = self.full.between(u, self.plus(u)).object_map[x]
        a = self.side.transition(side, self.plus(u), self.plus(v))[z]
        return h.then(zeta[v][y], h.inverse(a))

    def _enumerate(self, fuel) -> list[PObject]:
        meter = _Fuel(fuel)
        h, d = self.h, self.d
        tops = enumerate_functors(d.groupoids[self.top], h, fuel)
        out = []
        for top in tops:
            for side in self.side_cat.objects:
                zeta: dict = {}

                def visit(i):
                    meter.tick("pullback enumeration")
                    if i == len(self.low_order):
                        out.append(PObject(top, side, {u: dict(z) for u, z in zeta.items()}))
                        return
                    u = self.low_order[i]
                    src, dst = self._zeta_source(top, u), self._zeta_target(side, u)
                    ups = self.lower.upper_covers(u)
                    if not ups:
                        options = natural_transformations(d.groupoids[u], h, src, dst)
                    else:
                        forced = {x: self._triangle_value(side, zeta, u, ups[0], x) for x in d.groupoids[u].objects}
                        options = [forced]
                    for eta in options:
                        zeta[u] = eta
                        if self._zeta_ok(top, side, zeta, u):
                            visit(i + 1)
                    zeta.pop(u, None)

                visit(0)
        return out

    def _zeta_ok(self, top, side, zeta, u) -> bool:
        g = self.d.groupoids[u]
        src, dst = self._zeta_source(top, u), self._zeta_target(side, u)
        if _natural_problems(self.full, u, src, dst, zeta[u], ""):
            return False
        for v in self.lower:
            if v != u and u.issubset(v) and v in zeta:
                if any(zeta[u][x] != self._triangle_value(side, zeta, u, v, x) for x in g.objects):
                    return False
        return True

    def validate(self, p: PObject) -> list[str]:
        out = _functor_problems(self.full, self.top, p.top)
        out += validate_descent(self.side, p.side)
        if out:
            return out
        zeta = p.zeta
        for u in self.lower:
            if not self._zeta_ok(p.top, p.side, zeta, u):
                out.append(f"zeta fails at {u}")
        return out

    def morphisms(self, p: PObject, q: PObject, first_only: bool = False) -> list[PMorphism]:
        h, d = self.h, self.d
        tops = natural_transformations(d.groupoids[self.top], h, p.top, q.top, layout=self.top_layout)
        if not tops:
            return []
        sides = descent_morphisms(self.side, p.side, q.side)
        out = []
        for gt in tops:
            for gs in sides:
                ok = True
                for u in self.lower:
                    to_top = self.full.between(u, self.top).object_map
                    to_plus = self.full.between(u, self.plus(u)).object_map
                    for x in d.groupoids[u].objects:
                        lhs = h.then(gt[to_top[x]], q.zeta[u][x])
                        rhs = h.then(p.zeta[u][x], gs[self.plus(u)][to_plus[x]])
                        if lhs != rhs:
                            ok = False
                            break
                    if not ok:
                        break
                if ok:
                    out.append(PMorphism(gt, gs))
                    if first_only:
                        return out
        return out

    def classification(self) -> Classification:
        if self._classification is None:
            def bucket(p):
                return (tuple(sorted(self.h.piece_of[y] for y in p.top.obj.values())),
                        tuple(self.h.piece_of[p.side.X[s].obj[x]] for s in self.side.order
                              for x in self.side.g(s).objects))

            def find(p, q):
                found = self.morphisms(p, q, first_only=True)
                return found[0] if found else None

            self._classification = classify(self.objects, bucket, find, lambda p: self.morphisms(p, p))
        return self._classification

    # -- Gamma and Delta ------------------------------------------------------------

    def gamma(self, X: DescentObject) -> PObject:
        h, full = self.h, self.full
        side = DescentObject({s: X.X[s] for s in self.side.view},
                             {(s, t): X.A[(s, t)] for s, t in self.side.covers})
        zeta = {}
        for u in self.lower:
            a_top = full.transition(X, u, self.top)
            a_plus = full.transition(X, u, self.plus(u))
            zeta[u] = {x: h.then(h.inverse(a_top[x]), a_plus[x]) for x in a_top}
        return PObject(X.X[self.top], side, zeta)

    def gamma_morphism(self, f: dict) -> PMorphism:
        return PMorphism(f[self.top], {s: f[s] for s in self.side.view})

    def delta(self, p: PObject) -> DescentObject:
        h = self.h
        X = {self.top: p.top}
        for s in self.side.view:
            X[s] = p.side.X[s]
        for s in self.lower:
            X[s] = self._zeta_source(p.top, s)
        A = {}
        for s, t in self.full.covers:
            if s in self.side.view:
                A[(s, t)] = p.side.A[(s, t)]
            elif self.n in t:
                A[(s, t)] = dict(p.zeta[s])
            else:
                A[(s, t)] = {x: h.identity(y) for x, y in X[s].obj.items()}
        return DescentObject(X, A)

    def delta_morphism(self, g: PMorphism) -> dict:
        f = {self.top: dict(g.top)}
        for s in self.side.view:
            f[s] = dict(g.side[s])
        for s in self.lower:
            to_top = self.full.between(s, self.top).object_map
            f[s] = {x: g.top[to_top[x]] for x in self.d.groupoids[s].objects}
        return f

    def xi(self, X: DescentObject) -> dict:
        """Components of the natural isomorphism ``Delta(Gamma(X)) -> X``."""
        h = self.h
        out = {}
        for s in self.full.view:
            if s in self.lower:
                a = self.full.transition(X, s, self.top)
                out[s] = {x: h.inverse(m) for x, m in a.items()}
            else:
                out[s] = self.full.identity_on(X.X[s])
        return out

    def four_case_problems(self, p: PObject) -> list[str]:
        """Check ``A_{S,T} = A^B_{S+,T} . zeta_S`` for ``S`` in b(n-1) and ``T`` in b'(n-1)."""
        h, full = self.h, self.full
        X = self.delta(p)
        out = []
        for s in self.lower:
            for t in self.side.view:
                if not s.issubset(t):
                    continue
                lhs = full.transition(X, s, t)
                b = self.side.transition(p.side, self.plus(s), t)
                to_plus = self.full.between(s, self.plus(s)).object_map
                for x in lhs:
                    if lhs[x] != h.then(p.zeta[s][x], b[to_plus[x]]):
                        out.append(f"transition {s}<{t} differs at {x}")
        return out


def same_pobject(p: PObject, q: PObject) -> bool:
    return (p.top.obj == q.top.obj and p.top.gen == q.top.gen and p.side.key() == q.side.key()
            and p.zeta == q.zeta)


@dataclass
class PullbackReport:
    p_objects: int
    p_classes: int
    descent_objects: int
    descent_classes: int
    gamma_delta_identity: bool
    delta_valid: bool
    xi_natural: bool
    four_case: bool
    xi_identity_off_lower: bool
    problems: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return (self.gamma_delta_identity and self.delta_valid and self.xi_natural and self.four_case
                and self.xi_identity_off_lower and self.p_classes == self.descent_classes)


def descent_pullback_gamma_delta(d: Diagram, h: FiniteGroupoid, fuel: int = 10000,
                                 force: bool = False) -> PullbackReport:
    P = Pullback(d, h, fuel, force)
    full_cat = DescentCategory(d, d.view, h, fuel, force=True)
    ctx = full_cat.ctx
    problems = []

    gd = True
    pc = P.classification()
    for i, p in enumerate(P.objects):
        X = P.delta(p)
        bad = validate_descent(ctx, X)
        if bad:
            problems.append(f"Delta of P object {i} is invalid: {bad[0]}")
        if not same_pobject(P.gamma(X), p):
            gd = False
            problems.append(f"Gamma(Delta(p)) != p for P object {i}")
    # morphisms: automorphisms of class representatives and the connecting isomorphisms
    for ci, members in enumerate(pc.classes):
        gens = list(pc.automorphisms[ci]) + [pc.connecting[j] for j in members[1:]]
        for g in gens:
            back = P.gamma_morphism(P.delta_morphism(g))
            if back.top != g.top or back.side != g.side:
                gd = False
                problems.append(f"Gamma(Delta(g)) != g on a morphism out of P class {ci}")
    delta_valid = not any("invalid" in p for p in problems)

    fc = full_cat.classification()
    xi_ok, off_lower = True, True
    for i, X in enumerate(full_cat.objects):
        Y = P.delta(P.gamma(X))
        xi = P.xi(X)
        bad = validate_descent(ctx, Y) + validate_descent_morphism(ctx, Y, X, xi)
        if bad:
            xi_ok = False
            problems.append(f"xi fails on descent object {i}: {bad[0]}")
        for s in ctx.view:
            if s not in P.lower and any(m.g != 0 or m.src != m.dst for m in xi[s].values()):
                off_lower = False
    for ci, members in enumerate(fc.classes):
        rep = full_cat.objects[members[0]]
        pairs = [(rep, rep, a) for a in fc.automorphisms[ci]]
        pairs += [(rep, full_cat.objects[j], fc.connecting[j]) for j in members[1:]]
        for X, Y, f in pairs:
            dgf = P.delta_morphism(P.gamma_morphism(f))
            lhs = compose_descent_morphisms(ctx, dgf, P.xi(Y))
            rhs = compose_descent_morphisms(ctx, P.xi(X), f)
            if lhs != rhs:
                xi_ok = False
                problems.append(f"xi is not natural on a morphism of descent class {ci}")
    four = True
    for i, p in enumerate(P.objects):
        bad = P.four_case_problems(p)
        if bad:
            four = False
            problems.append(f"P object {i}: {bad[0]}")
    return PullbackReport(len(P.objects), pc.class_count, len(full_cat.objects), fc.class_count,
                          gd, delta_valid, xi_ok, four, off_lower, problems)
