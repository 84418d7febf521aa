"""Subset posets of {1, ..., n}: the full poset of proper subsets, relative
intervals ``{X : U <= X < V}`` and codimension truncations ``{S : |S| >= k}``.

Subsets are bitmasks.  Every enumeration is sorted by ``(cardinality, mask)``
so that results are reproducible across runs.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Iterator

from .errors import ViewError


@dataclass(frozen=True)
class Subset:
    """A subset of the ground set ``{1, ..., n}`` stored as a bitmask."""

    n: int
    mask: int

    def __post_init__(self):
        if self.n < 1:
            raise ViewError(f"ground set size must be >= 1, got {self.n}")
        if self.mask < 0 or self.mask >> self.n:
            raise ViewError(f"mask {self.mask:#b} has members outside 1..{self.n}")
        object.__setattr__(self, "_hash", hash((self.n, self.mask)))

    def __hash__(self):
        return self._hash

    def __eq__(self, other):
        if other.__class__ is not Subset:
            return NotImplemented
        return self.mask == other.mask and self.n == other.n

    @classmethod
    def of(cls, n: int, members: Iterable[int] = ()) -> "Subset":
        mask = 0
        for i in members:
            if not 1 <= i <= n:
                raise ViewError(f"element {i} not in 1..{n}")
            mask |= 1 << (i - 1)
        return cls(n, mask)

    @classmethod
    def full(cls, n: int) -> "Subset":
        return cls(n, (1 << n) - 1)

    @classmethod
    def initial(cls, n: int, k: int) -> "Subset":
        """The segment ``{1, ..., k}``."""
        return cls.of(n, range(1, k + 1))

    @classmethod
    def parse(cls, n: int, text: str) -> "Subset":
        """Parse a literal such as ``"{1,3}"`` or ``"{}"``."""
        body = text.strip()
        if not (body.startswith("{") and body.endswith("}")):
            raise ViewError(f"bad subset literal {text!r}")
        inner = body[1:-1].strip()
        if not inner:
            return cls(n, 0)
        try:
            items = [int(tok) for tok in inner.split(",")]
        except ValueError:
            raise ViewError(f"bad subset literal {text!r}") from None
        if items != sorted(set(items)):
            raise ViewError(f"subset literal {text!r} must list elements ascending")
        return cls.of(n, items)

    @property
    def members(self) -> tuple[int, ...]:
        return tuple(i + 1 for i in range(self.n) if self.mask >> i & 1)

    @property
    def key(self) -> tuple[int, int]:
        return (bin(self.mask).count("1"), self.mask)

    def __len__(self):
        return bin(self.mask).count("1")

    def __contains__(self, i: int) -> bool:
        return 1 <= i <= self.n and bool(self.mask >> (i - 1) & 1)

    def __iter__(self) -> Iterator[int]:
        return iter(self.members)

    def __lt__(self, other: "Subset") -> bool:
        return self.key < other.key

    def __le__(self, other: "Subset") -> bool:
        return self.key <= other.key

    def __gt__(self, other: "Subset") -> bool:
        return self.key > other.key

    def __ge__(self, other: "Subset") -> bool:
        return self.key >= other.key

    def issubset(self, other: "Subset") -> bool:
        return self.mask & ~other.mask == 0

    def is_proper(self) -> bool:
        return self.mask != (1 << self.n) - 1

    def union(self, other: "Subset") -> "Subset":
        return Subset(self.n, self.mask | other.mask)

    def add(self, i: int) -> "Subset":
        return Subset(self.n, self.mask | 1 << (i - 1))

    def remove(self, i: int) -> "Subset":
        return Subset(self.n, self.mask & ~(1 << (i - 1)))

    def __str__(self):
        return "{" + ",".join(map(str, self.members)) + "}"

    def __repr__(self):
        return f"Subset({self.n}, {self})"


@dataclass(frozen=True)
class CoverRelation:
    lower: Subset
    upper: Subset

    def __str__(self):
        return f"{self.lower}<{self.upper}"


@dataclass(frozen=True)
class PosetView:
    """An enumerable subposet of the proper subsets of ``{1, ..., n}``.

    ``kind`` is one of ``"full"``, ``"rel"`` (``U <= X < V``), ``"codim"``
    (``|X| >= k``) or ``"explicit"``.  Use the classmethod constructors.
    """

    n: int
    kind: str
    v: Subset | None = None
    u: Subset | None = None
    k: int | None = None
    explicit: tuple[Subset, ...] = field(default=())

    def __post_init__(self):
        if self.n < 1:
            raise ViewError(f"ground set size must be >= 1, got {self.n}")
        if self.kind == "full":
            return
        if self.kind == "rel":
            if self.v is None or self.u is None:
                raise ViewError("relative view needs V and U")
            if self.v.n != self.n or self.u.n != self.n:
                raise ViewError("V and U must live on the same ground set")
            if not self.u.issubset(self.v) or self.u == self.v:
                raise ViewError(f"relative view needs U < V, got U={self.u}, V={self.v}")
            return
        if self.kind == "codim":
            if self.k is None or not 0 <= self.k < self.n:
                raise ViewError(f"codimension view needs 0 <= k < n, got k={self.k}, n={self.n}")
            return
        if self.kind == "explicit":
            for s in self.explicit:
                if s.n != self.n or not s.is_proper():
                    raise ViewError(f"{s!r} is not a proper subset of 1..{self.n}")
            return
        raise ViewError(f"unknown view kind {self.kind!r}")

    @classmethod
    def full(cls, n: int) -> "PosetView":
        return cls(n, "full")

    @classmethod
    def rel(cls, v: Subset, u: Subset) -> "PosetView":
        """The interval ``{X : u <= X < v}``; ``v`` may be the whole ground set."""
        return cls(v.n, "rel", v=v, u=u)

    @classmethod
    def codim(cls, n: int, k: int) -> "PosetView":
        return cls(n, "codim", k=k)

    @classmethod
    def of(cls, n: int, subsets: Iterable[Subset]) -> "PosetView":
        return cls(n, "explicit", explicit=tuple(sorted(set(subsets))))

    def _admits(self, s: Subset) -> bool:
        if s.n != self.n or not s.is_proper():
            return False
        if self.kind == "full":
            return True
        if self.kind == "rel":
            return self.u.issubset(s) and s.issubset(self.v) and s != self.v
        if self.kind == "codim":
            return len(s) >= self.k
        return s in self._member_set

    @cached_property
    def members(self) -> tuple[Subset, ...]:
        if self.kind == "explicit":
            return tuple(sorted(set(self.explicit)))
        out = [Subset(self.n, m) for m in range((1 << self.n) - 1)]
        return tuple(sorted(s for s in out if self._admits(s)))

    @cached_property
    def _member_set(self) -> frozenset:
        return frozenset(self.members)

    def __contains__(self, s: Subset) -> bool:
        return s in self._member_set

    def __iter__(self) -> Iterator[Subset]:
        return iter(self.members)

    def __len__(self):
        return len(self.members)

    def issubview(self, other: "PosetView") -> bool:
        return self.n == other.n and all(s in other for s in self.members)

    def maximal(self) -> tuple[Subset, ...]:
        """Elements of the view with no upper cover inside the view."""
        tops = {c.lower for c in covers(self)}
        return tuple(s for s in self.members if s not in tops)

    def upper_covers(self, s: Subset) -> tuple[Subset, ...]:
        return tuple(
            s.add(i) for i in range(1, self.n + 1) if i not in s and s.add(i) in self
        )

    def lower_covers(self, s: Subset) -> tuple[Subset, ...]:
        return tuple(sorted(s.remove(i) for i in s.members if s.remove(i) in self))

    def describe(self) -> str:
        if self.kind == "full":
            return f"b({self.n})"
        if self.kind == "rel":
            return f"b({self.v}:{self.u})"
        if self.kind == "codim":
            return f"b({self.n},{self.k})"
        return "{" + ", ".join(map(str, self.members)) + "}"


def enumerate_view(view: PosetView) -> tuple[Subset, ...]:
    """All members of ``view`` sorted by (cardinality, mask)."""
    return view.members


def partition_b(n: int) -> tuple[PosetView, PosetView, Subset]:
    """Split ``b(n)`` into ``b(n-1)``, ``b'(n-1) = b(n:{n})`` and ``{1..n-1}``."""
    if n < 2:
        raise ViewError(f"partition needs n >= 2, got {n}")
    top = Subset.initial(n, n - 1)
    lower = PosetView.rel(top, Subset(n, 0))
    upper = PosetView.rel(Subset.full(n), Subset.of(n, [n]))
    return lower, upper, top


def plus(u: Subset, n: int) -> Subset:
    """``u`` together with the element ``n``; ``n`` must not already be in ``u``."""
    if n in u:
        raise ViewError(f"{n} already belongs to {u}")
    return u.add(n)


def alpha(x: Subset, n: int) -> Subset:
    """The poset isomorphism ``b(n-1) -> b'(n-1)``, ``X -> X + {n}``."""
    return plus(x, n)


def covers(view: PosetView) -> tuple[CoverRelation, ...]:
    out = []
    for s in view.members:
        for t in view.upper_covers(s):
            out.append(CoverRelation(s, t))
    out.sort(key=lambda c: (c.lower.key, c.upper.key))
    return tuple(out)


def diamonds(view: PosetView) -> tuple[tuple[Subset, Subset, Subset, Subset], ...]:
    """Quadruples ``(S, T1, T2, W)`` with ``S < T1, T2 < W`` all covers in ``view``."""
    out = []
    for s in view.members:
        ups = view.upper_covers(s)
        for i, t1 in enumerate(ups):
            for t2 in ups[i + 1:]:
                w = t1.union(t2)
                if w in view:
                    out.append((s, t1, t2, w))
    return tuple(out)


def canonical_chain(s: Subset, t: Subset) -> tuple[Subset, ...]:
    """``s = S0 < S1 < ... < t`` adding the missing elements in increasing order."""
    if not s.issubset(t):
        raise ViewError(f"{s} is not contained in {t}")
    chain = [s]
    cur = s
    for i in t.members:
        if i not in s:
            cur = cur.add(i)
            chain.append(cur)
    return tuple(chain)
