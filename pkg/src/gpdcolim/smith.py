"""Smith normal form over the integers with unimodular transforms.

Entries are Python integers, but every intermediate value is checked
against the signed 64-bit range and :class:`SmithOverflowError` is raised
when it leaves it.
"""

from __future__ import annotations

from .errors import SmithOverflowError

_LIMIT = 1 << 63


def _check(row, where):
    for v in row:
        if not -_LIMIT <= v < _LIMIT:
            raise SmithOverflowError(f"intermediate entry {v} exceeds 64 bits ({where})")


def _nearest(a, b):
    """Quotient rounded to nearest, so remainders are as small as possible."""
    q, r = divmod(a, b)
    if 2 * abs(r) > abs(b):
        q += 1
    return q


def _identity(k):
    return [[int(i == j) for j in range(k)] for i in range(k)]


def smith_normal_form(matrix):
    """Return ``(D, U, V)`` with ``U * A * V = D`` and ``D`` in Smith form.

    ``A`` is a list of integer rows (``m x n``).  ``U`` and ``V`` are
    unimodular; the nonzero diagonal entries of ``D`` are positive and each
    divides the next.
    """
    A = [list(map(int, row)) for row in matrix]
    m = len(A)
    n = len(A[0]) if m else 0
    for row in A:
        if len(row) != n:
            raise ValueError("ragged matrix")
        _check(row, "input")
    U = _identity(m)
    V = _identity(n)

    def swap_rows(i, j):
        A[i], A[j] = A[j], A[i]
        U[i], U[j] = U[j], U[i]

    def swap_cols(i, j):
        for row in A:
            row[i], row[j] = row[j], row[i]
        for row in V:
            row[i], row[j] = row[j], row[i]

    def add_row(src, dst, q):
        # row_dst += q * row_src
        if q:
            A[dst] = [a + q * b for a, b in zip(A[dst], A[src])]
            U[dst] = [a + q * b for a, b in zip(U[dst], U[src])]
            _check(A[dst], "row operation")
            _check(U[dst], "row transform")

    def add_col(src, dst, q):
        if q:
            for row in A:
                row[dst] += q * row[src]
            for row in V:
                row[dst] += q * row[src]
            _check([row[dst] for row in A], "column operation")
            _check([row[dst] for row in V], "column transform")

    for t in range(min(m, n)):
        best = None
        for i in range(t, m):
            for j in range(t, n):
                if A[i][j] and (best is None or abs(A[i][j]) < abs(A[best[0]][best[1]])):
                    best = (i, j)
        if best is None:
            break
        swap_rows(t, best[0])
        swap_cols(t, best[1])
        while True:
            # Clear column t below the pivot, then row t right of it.  Any
            # nonzero remainder is smaller than the pivot; the smallest one
            # becomes the new pivot and the sweep repeats.
            for i in range(t + 1, m):
                if A[i][t]:
                    add_row(t, i, -_nearest(A[i][t], A[t][t]))
            rest = [i for i in range(t + 1, m) if A[i][t]]
            if rest:
                swap_rows(t, min(rest, key=lambda i: abs(A[i][t])))
                continue
            for j in range(t + 1, n):
                if A[t][j]:
                    add_col(t, j, -_nearest(A[t][j], A[t][t]))
            rest = [j for j in range(t + 1, n) if A[t][j]]
            if rest:
                swap_cols(t, min(rest, key=lambda j: abs(A[t][j])))
                continue
            p = A[t][t]
            bad = next(((i, j) for i in range(t + 1, m) for j in range(t + 1, n) if A[i][j] % p), None)
            if bad is None:
                break
            add_row(bad[0], t, 1)
        if A[t][t] < 0:
            A[t] = [-a for a in A[t]]
            U[t] = [-a for a in U[t]]
    return A, U, V


def invariant_factors(matrix) -> list[int]:
    """Diagonal of the Smith form with zeros dropped (``d1 | d2 | ...``)."""
    D, _, _ = smith_normal_form(matrix)
    return [D[i][i] for i in range(min(len(D), len(D[0]) if D else 0)) if D[i][i]]
