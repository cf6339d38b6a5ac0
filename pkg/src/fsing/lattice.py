"""Exact integer lattice utilities for semigroup embeddings.

Everything here works on small matrices of machine-size integers: Smith
normal form (for deciding membership in the group generated by exponent
vectors), a Hermite-style row echelon basis, and bounded enumeration of
lattice points inside a coordinate box.
"""

from __future__ import annotations

from typing import List, Sequence, Tuple

from .errors import ResourceLimitError

Matrix = List[List[int]]


def smith_normal_form(rows: Sequence[Sequence[int]]) -> Tuple[Tuple[int, ...], Tuple[Tuple[int, ...], ...]]:
    """Diagonal of the Smith form of M plus the right transform V.

    Returns (diag, V) with U*M*V diagonal for some unimodular U; diag holds
    the nonzero invariant factors (each dividing the next).  V is enough to
    decide solvability of y*M = v over the integers, which is all the
    membership test needs.
    """
    r = len(rows)
    n = len(rows[0]) if r else 0
    a: Matrix = [list(row) for row in rows]
    v: Matrix = [[1 if i == j else 0 for j in range(n)] for i in range(n)]

    def col_sub(j, k, q):  # col_j -= q * col_k
        for i in range(r):
            a[i][j] -= q * a[i][k]
        for i in range(n):
            v[i][j] -= q * v[i][k]

    def col_swap(j, k):
        for i in range(r):
            a[i][j], a[i][k] = a[i][k], a[i][j]
        for i in range(n):
            v[i][j], v[i][k] = v[i][k], v[i][j]

    def row_sub(i, k, q):  # row_i -= q * row_k
        ai, ak = a[i], a[k]
        for j in range(n):
            ai[j] -= q * ak[j]

    t = 0
    while t < min(r, n):
        # locate a smallest nonzero entry in the trailing block
        pivot = None
        best = None
        for i in range(t, r):
            for j in range(t, n):
                x = a[i][j]
                if x and (best is None or abs(x) < best):
                    best = abs(x)
                    pivot = (i, j)
        if pivot is None:
            break
        pi, pj = pivot
        if pi != t:
            a[pi], a[t] = a[t], a[pi]
        if pj != t:
            col_swap(pj, t)
        # clear below and to the right of the pivot
        dirty = True
        while dirty:
            dirty = False
            for i in range(t + 1, r):
                if a[i][t]:
                    q = a[i][t] // a[t][t]
                    row_sub(i, t, q)
                    if a[i][t]:
                        a[i], a[t] = a[t], a[i]
                        dirty = True
            for j in range(t + 1, n):
                if a[t][j]:
                    q = a[t][j] // a[t][t]
                    col_sub(j, t, q)
                    if a[t][j]:
                        col_swap(j, t)
                        dirty = True
        # enforce divisibility of the remaining block by the pivot
        fix = None
        for i in range(t + 1, r):
            for j in range(t + 1, n):
                if a[i][j] % a[t][t]:
                    fix = i
                    break
            if fix is not None:
                break
        if fix is not None:
            row_sub(t, fix, -1)  # add the offending row, then restart this pivot
            continue
        if a[t][t] < 0:
            col_sub(t, t, 2)  # negate via col_t -= 2*col_t
        t += 1

    diag = tuple(a[i][i] for i in range(t) if a[i][i])
    return diag, tuple(tuple(row) for row in v)


def lattice_membership_test(diag, v_matrix, rank, n):
    """Closure deciding whether a vector lies in the row lattice."""

    def member(vec: Sequence[int]) -> bool:
        for j in range(n):
            w = 0
            for i in range(n):
                w += vec[i] * v_matrix[i][j]
            if j < rank:
                if w % diag[j]:
                    return False
            elif w:
                return False
        return True

    return member


def hermite_basis(rows: Sequence[Sequence[int]]) -> Tuple[Tuple[Tuple[int, ...], ...], Tuple[int, ...]]:
    """Row echelon basis of the integer row space, with its pivot columns.

    Pivots are positive and each later row is zero in all earlier pivot
    columns, which is the shape the box enumeration below relies on.
    """
    work: Matrix = [list(r) for r in rows if any(r)]
    n = len(rows[0]) if rows else 0
    basis: Matrix = []
    pivots: List[int] = []
    for col in range(n):
        # Euclid-combine all support in this column into a single row
        while True:
            live = [row for row in work if row[col]]
            if len(live) <= 1:
                break
            live.sort(key=lambda row: abs(row[col]))
            small = live[0]
            for row in live[1:]:
                q = row[col] // small[col]
                for j in range(n):
                    row[j] -= q * small[j]
            work = [row for row in work if any(row)]
        if not live:
            continue
        pivot_row = live[0]
        if pivot_row[col] < 0:
            for j in range(n):
                pivot_row[j] = -pivot_row[j]
        basis.append(list(pivot_row))
        pivots.append(col)
        work = [row for row in work if row is not pivot_row and any(row)]
        for row in work:
            if row[col]:
                q = row[col] // pivot_row[col]
                for j in range(n):
                    row[j] -= q * pivot_row[j]
        work = [row for row in work if any(row)]
    return tuple(tuple(r) for r in basis), tuple(pivots)


def lattice_points_in_box(
    basis: Sequence[Sequence[int]],
    pivots: Sequence[int],
    lo: Sequence[int],
    hi: Sequence[int],
    cap: int,
) -> List[Tuple[int, ...]]:
    """All lattice points v with lo <= v <= hi componentwise.

    Walks integer coefficients of the echelon basis; the pivot structure
    bounds each coefficient once the earlier ones are fixed.  The zero
    vector is included when it fits the box.  Raises ResourceLimitError
    after visiting more than cap candidates.
    """
    n = len(lo)
    if not basis:
        zero = tuple(0 for _ in range(n))
        if all(l <= 0 <= h for l, h in zip(lo, hi)):
            return [zero]
        return []
    out: List[Tuple[int, ...]] = []
    visited = 0

    def rec(k: int, partial: List[int]):
        nonlocal visited
        if k == len(basis):
            visited += 1
            if visited > cap:
                raise ResourceLimitError(f"lattice enumeration cap {cap} exceeded")
            if all(lo[j] <= partial[j] <= hi[j] for j in range(n)):
                out.append(tuple(partial))
            return
        c = pivots[k]
        piv = basis[k][c]
        base = partial[c]
        tmin = -((base - lo[c]) // piv)
        tmax = (hi[c] - base) // piv
        row = basis[k]
        for t in range(tmin, tmax + 1):
            rec(k + 1, [partial[j] + t * row[j] for j in range(n)])

    rec(0, [0] * n)
    return out
