from __future__ import annotations

from typing import Callable, Hashable, Iterable


class UnionFind:
    """Disjoint-set forest over arbitrary hashable items.

    Path compression plus union by size.  ``classes()`` reports every class
    with its smallest member first, using ``key`` to order members, so the
    output does not depend on the order in which unions were performed.
    """

    def __init__(self, items: Iterable[Hashable] = (), key: Callable | None = None):
        self._parent: dict = {}
        self._size: dict = {}
        self._key = key
        for x in items:
            self.add(x)

    def add(self, x) -> None:
        if x not in self._parent:
            self._parent[x] = x
            self._size[x] = 1

    def __contains__(self, x) -> bool:
        return x in self._parent

    def __len__(self):
        return len(self._parent)

    def find(self, x):
        root = x
        while self._parent[root] != root:
            root = self._parent[root]
        while self._parent[x] != root:
            self._parent[x], x = root, self._parent[x]
        return root

    def union(self, x, y) -> bool:
        """Merge the classes of ``x`` and ``y``; False if already merged."""
        rx, ry = self.find(x), self.find(y)
        if rx == ry:
            return False
        if self._size[rx] < self._size[ry]:
            rx, ry = ry, rx
        self._parent[ry] = rx
        self._size[rx] += self._size[ry]
        return True

    def same(self, x, y) -> bool:
        return self.find(x) == self.find(y)

    def classes(self) -> list[list]:
        groups: dict = {}
        for x in self._parent:
            groups.setdefault(self.find(x), []).append(x)
        out = [sorted(g, key=self._key) for g in groups.values()]
        out.sort(key=lambda g: self._key(g[0]) if self._key else g[0])
        return out

    def representatives(self) -> dict:
        """Map every item to the smallest member of its class."""
        rep = {}
        for cls in self.classes():
            for x in cls:
                rep[x] = cls[0]
        return rep
