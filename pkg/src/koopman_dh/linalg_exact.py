"""Exact linear algebra over the rationals (and other exact fields).

Rank decisions, solvability tests, inverses and pseudo-inverses here are all
division-free or Fraction-based: no floating point, so rank(...) == k is a
theorem about the input, not a tolerance call. Integer matrices get a
fraction-free echelon fast path (cross-multiplication with gcd-normalized
rows); everything else runs through a generic RREF that works for any exact
field element supporting +, -, *, / and == 0 (Fraction, prime-field values).
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd


class IntegerEchelon:
    """Incremental fraction-free row echelon of an integer matrix."""

    def __init__(self, ncols: int):
        self.ncols = ncols
        self.pivot_rows: dict[int, list[int]] = {}

    def add_row(self, row) -> int | None:
        """Reduce a row against current pivots; returns its pivot column or None."""
        row = list(row)
        for col in range(self.ncols):
            v = row[col]
            if v == 0:
                continue
            piv = self.pivot_rows.get(col)
            if piv is None:
                g = 0
                for a in row:
                    g = gcd(g, a)
                if g > 1:
                    row = [a // g for a in row]
                if row[col] < 0:
                    row = [-a for a in row]
                self.pivot_rows[col] = row
                return col
            pv = piv[col]
            g = gcd(v, pv)
            f_row, f_piv = pv // g, v // g
            row = [f_row * a - f_piv * b for a, b in zip(row, piv)]
        return None

    @property
    def rank(self) -> int:
        return len(self.pivot_rows)


def rank_int(rows) -> int:
    """Exact rank of an integer matrix."""
    rows = list(rows)
    if not rows:
        return 0
    ech = IntegerEchelon(len(rows[0]))
    for row in rows:
        ech.add_row(row)
    return ech.rank


def solve_int_with_ranks(a_rows, b, early_abort: bool = False):
    """Solve the integer system A x = b exactly over the rationals.

    Returns (solution | None, rank(A), rank(A|b)). The solution is a
    particular one with free variables pinned to zero. With early_abort the
    elimination stops at the first inconsistency certificate, in which case
    the reported ranks are lower bounds (rank(A) < rank(A|b) still certified).
    """
    a_rows = [list(r) for r in a_rows]
    if not a_rows:
        return [], 0, 0
    naug = len(a_rows[0]) + 1
    b_col = naug - 1
    ech = IntegerEchelon(naug)
    inconsistent = False
    for row, rhs in zip(a_rows, b):
        if ech.add_row(row + [rhs]) == b_col:
            inconsistent = True
            if early_abort:
                break
    rank_aug = ech.rank
    rank_a = rank_aug - (1 if b_col in ech.pivot_rows else 0)
    if inconsistent:
        return None, rank_a, rank_aug
    solution = [Fraction(0)] * (naug - 1)
    for col in sorted(ech.pivot_rows, reverse=True):
        prow = ech.pivot_rows[col]
        s = Fraction(prow[b_col])
        for c2 in range(col + 1, b_col):
            if prow[c2]:
                s -= prow[c2] * solution[c2]
        solution[col] = s / prow[col]
    return solution, rank_a, rank_aug


def _pivot_weight(v) -> int:
    # Partial pivoting by numerator magnitude keeps intermediate fractions
    # small; any nonzero pivot is exact, so this only affects speed.
    return abs(getattr(v, "numerator", 1))


def rref(mat):
    """Reduced row echelon form over an exact field; returns (rows, pivot_cols)."""
    rows = [list(r) for r in mat]
    nrows = len(rows)
    ncols = len(rows[0]) if nrows else 0
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        best = None
        best_w = -1
        for i in range(r, nrows):
            v = rows[i][c]
            if v != 0:
                w = _pivot_weight(v)
                if w > best_w:
                    best, best_w = i, w
        if best is None:
            continue
        rows[r], rows[best] = rows[best], rows[r]
        pv = rows[r][c]
        rows[r] = [a / pv for a in rows[r]]
        for i in range(nrows):
            if i != r and rows[i][c] != 0:
                f = rows[i][c]
                rows[i] = [a - f * b for a, b in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
        if r == nrows:
            break
    return rows, pivots


def rank(mat) -> int:
    rows = list(mat)
    if rows and all(isinstance(v, int) for row in rows for v in row):
        return rank_int(rows)
    return len(rref(rows)[1])


def solve_field_with_ranks(a_rows, b):
    """Solve A x = b over an exact field via RREF of the augmented matrix.

    Returns (solution | None, rank(A), rank(A|b)); free variables are zero.
    """
    a_rows = [list(r) for r in a_rows]
    if not a_rows:
        return [], 0, 0
    b_col = len(a_rows[0])
    aug = [row + [rhs] for row, rhs in zip(a_rows, b)]
    rows, pivots = rref(aug)
    rank_aug = len(pivots)
    if b_col in pivots:
        return None, rank_aug - 1, rank_aug
    zero = a_rows[0][0] * 0
    solution = [zero] * b_col
    for i, col in enumerate(pivots):
        solution[col] = rows[i][b_col]
    return solution, rank_aug, rank_aug


def as_fractions(mat):
    return [[Fraction(v) for v in row] for row in mat]


def transpose(mat):
    return [list(col) for col in zip(*mat)]


def matmul(a, b):
    bt = transpose(b)
    return [[sum(x * y for x, y in zip(row, col)) for col in bt] for row in a]


def matvec(a, v):
    return [sum(x * y for x, y in zip(row, v)) for row in a]


def identity(n):
    return [[Fraction(int(i == j)) for j in range(n)] for i in range(n)]


def inverse(mat):
    """Exact inverse of a square nonsingular rational matrix."""
    n = len(mat)
    aug = [row + ident for row, ident in zip(as_fractions(mat), identity(n))]
    rows, pivots = rref(aug)
    if pivots[:n] != list(range(n)):
        raise ValueError("matrix is singular")
    return [row[n:] for row in rows[:n]]


def pinv(mat):
    """Exact Moore-Penrose pseudo-inverse via full-rank factorization.

    Writing A = C F with C the pivot columns of A and F the nonzero rows of
    rref(A), the pseudo-inverse is F^T (F F^T)^-1 (C^T C)^-1 C^T.
    """
    mat = as_fractions(mat)
    nrows = len(mat)
    ncols = len(mat[0])
    rows, pivots = rref(mat)
    r = len(pivots)
    if r == 0:
        return [[Fraction(0)] * nrows for _ in range(ncols)]
    f = [row[:] for row in rows[:r]]
    c = [[mat[i][j] for j in pivots] for i in range(nrows)]
    middle = matmul(inverse(matmul(f, transpose(f))), inverse(matmul(transpose(c), c)))
    return matmul(matmul(transpose(f), middle), transpose(c))


def frobenius_sq(mat) -> Fraction:
    """Squared Frobenius norm, exact when entries are exact."""
    return Fraction(sum(v * v for row in mat for v in row))
