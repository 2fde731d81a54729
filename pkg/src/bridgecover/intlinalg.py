"""Exact integer linear algebra: fraction-free determinants, Smith normal form,
and polynomial resultants.

Everything here works on plain Python ints (arbitrary precision), so results
are exact for matrices of any size that fits in memory.  No floating point.
"""
from __future__ import annotations

from math import gcd
from typing import List, Optional, Sequence, Tuple

IntMatrix = List[List[int]]


def copy_matrix(m: Sequence[Sequence[int]]) -> IntMatrix:
    return [list(row) for row in m]


def identity_matrix(n: int) -> IntMatrix:
    return [[1 if i == j else 0 for j in range(n)] for i in range(n)]


def mat_mul(a: Sequence[Sequence[int]], b: Sequence[Sequence[int]]) -> IntMatrix:
    if a and b and len(a[0]) != len(b):
        raise ValueError(f"shape mismatch: {len(a)}x{len(a[0])} times {len(b)}x{len(b[0])}")
    cols = len(b[0]) if b else 0
    return [[sum(a[i][k] * b[k][j] for k in range(len(b))) for j in range(cols)]
            for i in range(len(a))]


def det_bareiss(matrix: Sequence[Sequence[int]]) -> int:
    """Determinant of a square integer matrix by Bareiss' fraction-free
    elimination.  All intermediate values are exact integers.

    The empty 0x0 matrix has determinant 1.
    """
    n = len(matrix)
    if n == 0:
        return 1
    for row in matrix:
        if len(row) != n:
            raise ValueError(f"matrix is not square: {n} rows, row of length {len(row)}")
    m = copy_matrix(matrix)
    sign = 1
    prev = 1
    for k in range(n - 1):
        if m[k][k] == 0:
            pivot_row = next((i for i in range(k + 1, n) if m[i][k] != 0), None)
            if pivot_row is None:
                return 0
            m[k], m[pivot_row] = m[pivot_row], m[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                # Exact division: Bareiss guarantees divisibility by prev.
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) // prev
            m[i][k] = 0
        prev = m[k][k]
    return sign * m[n - 1][n - 1]


def sylvester_matrix(f: Sequence[int], g: Sequence[int]) -> IntMatrix:
    """Sylvester matrix of two integer polynomials given by coefficient lists
    in ascending degree order (f[i] is the coefficient of x**i).

    Leading zero coefficients must already be trimmed; the degrees used are
    len(f)-1 and len(g)-1.
    """
    if not f or f[-1] == 0 or not g or g[-1] == 0:
        raise ValueError("polynomials must be non-zero with trimmed leading coefficients")
    df = len(f) - 1
    dg = len(g) - 1
    n = df + dg
    if n == 0:
        return []
    rows: IntMatrix = []
    fd = list(reversed(f))  # descending order for the classical layout
    gd = list(reversed(g))
    for i in range(dg):
        rows.append([0] * i + fd + [0] * (n - i - len(fd)))
    for i in range(df):
        rows.append([0] * i + gd + [0] * (n - i - len(gd)))
    return rows


def resultant(f: Sequence[int], g: Sequence[int]) -> int:
    """Resultant of two integer polynomials (ascending coefficient lists).

    When g is monic this equals the product of f evaluated at the roots of g.
    """
    syl = sylvester_matrix(f, g)
    return det_bareiss(syl)


class SNFResult:
    """Smith normal form D = U * M * V with U, V unimodular.

    ``diagonal`` holds the invariant factors d_1 | d_2 | ... (non-negative,
    zeros trailing); ``rank`` is the number of non-zero invariant factors.
    """

    def __init__(self, diagonal: List[int], rank: int,
                 u: Optional[IntMatrix] = None, v: Optional[IntMatrix] = None):
        self.diagonal = diagonal
        self.rank = rank
        self.u = u
        self.v = v

    def __repr__(self) -> str:
        return f"SNFResult(diagonal={self.diagonal}, rank={self.rank})"


def smith_normal_form(matrix: Sequence[Sequence[int]],
                      with_transforms: bool = False) -> SNFResult:
    """Smith normal form over the integers.

    Pivot selection is deterministic: the entry of smallest non-zero absolute
    value in the remaining block, scanning row-major, ties going to the first
    seen.  With ``with_transforms`` the unimodular matrices U (rows) and V
    (columns) with U*M*V diagonal are returned as well.
    """
    m = copy_matrix(matrix)
    nrows = len(m)
    ncols = len(m[0]) if nrows else 0
    u = identity_matrix(nrows) if with_transforms else None
    v = identity_matrix(ncols) if with_transforms else None

    def swap_rows(i, j):
        m[i], m[j] = m[j], m[i]
        if u is not None:
            u[i], u[j] = u[j], u[i]

    def swap_cols(i, j):
        for row in m:
            row[i], row[j] = row[j], row[i]
        if v is not None:
            for row in v:
                row[i], row[j] = row[j], row[i]

    def add_row(src, dst, c):
        # row[dst] += c * row[src]
        m[dst] = [a + c * b for a, b in zip(m[dst], m[src])]
        if u is not None:
            u[dst] = [a + c * b for a, b in zip(u[dst], u[src])]

    def add_col(src, dst, c):
        for row in m:
            row[dst] += c * row[src]
        if v is not None:
            for row in v:
                row[dst] += c * row[src]

    def negate_row(i):
        m[i] = [-a for a in m[i]]
        if u is not None:
            u[i] = [-a for a in u[i]]

    k = 0
    size = min(nrows, ncols)
    while k < size:
        # Deterministic pivot scan: smallest |entry| != 0, row-major order.
        pivot = None
        best = None
        for i in range(k, nrows):
            for j in range(k, ncols):
                a = m[i][j]
                if a != 0 and (best is None or abs(a) < best):
                    best = abs(a)
                    pivot = (i, j)
        if pivot is None:
            break
        pi, pj = pivot
        if pi != k:
            swap_rows(k, pi)
        if pj != k:
            swap_cols(k, pj)
        # Clear row and column k; restart if a division leaves a remainder
        # that becomes a smaller pivot.
        while True:
            dirty = False
            for i in range(k + 1, nrows):
                if m[i][k] != 0:
                    q = m[i][k] // m[k][k]
                    add_row(k, i, -q)
                    if m[i][k] != 0:
                        swap_rows(k, i)
                        dirty = True
            for j in range(k + 1, ncols):
                if m[k][j] != 0:
                    q = m[k][j] // m[k][k]
                    add_col(k, j, -q)
                    if m[k][j] != 0:
                        swap_cols(k, j)
                        dirty = True
            if not dirty:
                break
        k += 1

    # Enforce the divisibility chain d_i | d_{i+1}.
    changed = True
    while changed:
        changed = False
        for i in range(size - 1):
            a, b = m[i][i], m[i + 1][i + 1]
            if b != 0 and a != 0 and b % a != 0:
                # Fold entry (i+1, i+1) into position (i, i) and redo.
                add_col(i + 1, i, 1)
                while True:
                    dirty = False
                    if m[i + 1][i] != 0:
                        q = m[i + 1][i] // m[i][i]
                        add_row(i, i + 1, -q)
                        if m[i + 1][i] != 0:
                            swap_rows(i, i + 1)
                            dirty = True
                    if m[i][i + 1] != 0:
                        q = m[i][i + 1] // m[i][i]
                        add_col(i, i + 1, -q)
                        if m[i][i + 1] != 0:
                            swap_cols(i, i + 1)
                            dirty = True
                    if not dirty:
                        break
                changed = True
    for i in range(size):
        if m[i][i] < 0:
            negate_row(i)

    diagonal = [m[i][i] for i in range(size)]
    rank = sum(1 for d in diagonal if d != 0)
    return SNFResult(diagonal, rank, u, v)


def in_row_span(matrix: Sequence[Sequence[int]], vector: Sequence[int]) -> bool:
    """Whether an integer vector lies in the integer span of the matrix rows.

    With U*M*V = D (Smith form), z*M = vec has an integer solution z iff
    y*D = vec*V does, which is a divisibility check column by column.
    """
    nrows = len(matrix)
    ncols = len(matrix[0]) if nrows else 0
    if len(vector) != ncols:
        if nrows == 0:
            return all(x == 0 for x in vector)
        raise ValueError(f"vector length {len(vector)} != {ncols} columns")
    if nrows == 0:
        return all(x == 0 for x in vector)
    snf = smith_normal_form(matrix, with_transforms=True)
    w = [sum(vector[i] * snf.v[i][j] for i in range(ncols)) for j in range(ncols)]
    for j in range(ncols):
        d = snf.diagonal[j] if j < len(snf.diagonal) else 0
        if d == 0:
            if w[j] != 0:
                return False
        elif w[j] % d != 0:
            return False
    return True


def gcd_of_minors(matrix: Sequence[Sequence[int]], k: int) -> int:
    """gcd of all k x k minors (0 for an empty set of non-zero minors).

    Brute-force; intended as an independent oracle for Smith normal form in
    tests, not for production use on large matrices.
    """
    from itertools import combinations

    nrows = len(matrix)
    ncols = len(matrix[0]) if nrows else 0
    if k == 0:
        return 1
    g = 0
    for rows in combinations(range(nrows), k):
        for cols in combinations(range(ncols), k):
            sub = [[matrix[i][j] for j in cols] for i in rows]
            g = gcd(g, det_bareiss(sub))
    return g
