"""Colimits of object sets and the injectivity conditions A^V_U."""

from __future__ import annotations

from dataclasses import dataclass, field

from .diagram import Diagram, ensure_strict, functor_between
from .errors import ViewError
from .poset import PosetView, Subset, covers
from .unionfind import UnionFind


def object_key(item) -> tuple:
    """Canonical order on pairs ``(S, x)``: subset order first, then object id."""
    s, x = item
    return (s.key, str(x))


def class_label(item) -> str:
    s, x = item
    return f"{s}:{x}"


@dataclass
class SetColimit:
    classes: list                 # class labels in canonical order
    insertion: dict               # (S, x) -> class label
    members: dict = field(default_factory=dict)   # label -> sorted list of (S, x)

    def representative(self, label):
        return self.members[label][0]

    def __len__(self):
        return len(self.classes)


def set_colimit(d: Diagram, view: PosetView | None = None, force: bool = False) -> SetColimit:
    view = view or d.view
    if not view.issubview(d.view):
        raise ViewError(f"{view.describe()} is not inside {d.view.describe()}")
    ensure_strict(d, force=force)
    items = [(s, x) for s in view for x in d.groupoids[s].objects]
    uf = UnionFind(items, key=object_key)
    for c in covers(view):
        f = functor_between(d, c.lower, c.upper)
        for x in d.groupoids[c.lower].objects:
            uf.union((c.lower, x), (c.upper, f.object_map[x]))
    insertion, members = {}, {}
    for cls in sorted(uf.classes(), key=lambda c: object_key(c[0])):
        label = class_label(cls[0])
        members[label] = cls
        for item in cls:
            insertion[item] = label
    return SetColimit(list(members), insertion, members)


@dataclass
class ConditionReport:
    v: Subset
    u: Subset
    holds: bool
    witness: tuple | None = None      # two class labels with the same image
    image: object = None              # their common object of Phi(V)
    labels: list = field(default_factory=list)   # which battery entries asked for this instance

    def name(self) -> str:
        return f"A^{self.v}_{self.u}"


def condition_AVU(d: Diagram, v: Subset, u: Subset, force: bool = False) -> ConditionReport:
    if not (u.issubset(v) and u != v and v.is_proper()):
        raise ViewError(f"condition needs U < V < ground set, got U={u}, V={v}")
    view = PosetView.rel(v, u)
    if v not in d.view or not view.issubview(d.view):
        raise ViewError(f"{view.describe()} and {v} must lie in the diagram's view")
    col = set_colimit(d, view, force=force)
    seen = {}
    for label in col.classes:
        s, x = col.representative(label)
        y = functor_between(d, s, v).object_map[x]
        if y in seen:
            return ConditionReport(v, u, False, (seen[y], label), y)
        seen[y] = label
    return ConditionReport(v, u, True)


def theorem_main_index(n: int) -> list[tuple[str, Subset, Subset]]:
    """(label, V, U) for every A1 and A2 instance, duplicates included."""
    if n < 2:
        raise ViewError("the condition battery needs n >= 2")
    out = []
    for k in range(1, n):
        out.append((f"A1 k={k}", Subset.initial(n, k), Subset(n, 0)))
    for k in range(1, n - 1):
        for u in _subsets(n, range(k + 2, n + 1)):
            out.append((f"A2 k={k} U={u}", Subset.initial(n, k).union(u), u))
    return out


def maincor_index(n: int) -> list[tuple[str, Subset, Subset]]:
    if n < 2:
        raise ViewError("the condition battery needs n >= 2")
    out = []
    for k in (n - 2, n - 1):
        if k >= 1:
            out.append((f"A1 k={k}", Subset.initial(n, k), Subset(n, 0)))
    for k in range(1, n - 1):
        for u in _subsets(n, range(k + 2, n + 1)):
            if len(u) >= n - k - 2:
                out.append((f"A2 k={k} U={u}", Subset.initial(n, k).union(u), u))
    return out


def _subsets(n, pool) -> list[Subset]:
    pool = list(pool)
    out = [Subset.of(n, [p for i, p in enumerate(pool) if m >> i & 1]) for m in range(1 << len(pool))]
    return sorted(out)


def _run_battery(d: Diagram, index, force: bool) -> list[ConditionReport]:
    if d.view != PosetView.full(d.n):
        raise ViewError("condition batteries need a diagram over the full poset")
    done: dict = {}
    out = []
    for label, v, u in index:
        key = (v, u)
        if key not in done:
            done[key] = condition_AVU(d, v, u, force=force)
            out.append(done[key])
        done[key].labels.append(label)
    return out


def check_theorem_main(d: Diagram, force: bool = False) -> list[ConditionReport]:
    """Every A1/A2 instance; an instance asked for twice is reported once with both labels."""
    return _run_battery(d, theorem_main_index(d.n), force)


def check_maincor(d: Diagram, force: bool = False) -> list[ConditionReport]:
    return _run_battery(d, maincor_index(d.n), force)
