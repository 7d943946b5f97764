"""Fraction-free (Bareiss) elimination over the rationals.

Matrices are lists of rows of ints or Fractions.  Rows are first scaled
to integers; elimination then only ever performs exact integer
divisions, and rationals reappear only in back substitution.
"""

from __future__ import annotations

from fractions import Fraction
from math import lcm

from .errors import SingularSystem

__all__ = ["bareiss", "solve", "solution_operator", "SolutionOperator", "rank", "complex_to_real"]


def _integer_rows(rows):
    out = []
    for row in rows:
        d = 1
        for v in row:
            if isinstance(v, Fraction):
                d = lcm(d, v.denominator)
        out.append([int(v * d) for v in row])
    return out


def bareiss(M: list[list[int]], ncols: int | None = None):
    """Fraction-free row echelon form of an integer matrix, in place.

    Only the first ``ncols`` columns are used for pivoting; the rest are
    carried along (an augmented block).  Returns the list of pivot
    columns; rows beyond ``len(pivots)`` are zero in the pivot block.
    """
    nrows = len(M)
    if nrows == 0:
        return []
    width = len(M[0])
    if ncols is None:
        ncols = width
    pivots = []
    prev = 1
    r = 0
    for c in range(ncols):
        if r >= nrows:
            break
        p = None
        for i in range(r, nrows):
            if M[i][c]:
                p = i
                break
        if p is None:
            continue
        if p != r:
            M[r], M[p] = M[p], M[r]
        piv = M[r][c]
        rowr = M[r]
        for i in range(r + 1, nrows):
            rowi = M[i]
            f = rowi[c]
            for j in range(c + 1, width):
                rowi[j] = (piv * rowi[j] - f * rowr[j]) // prev
            rowi[c] = 0
        # rows above the pivot row are already in echelon shape
        prev = piv
        pivots.append(c)
        r += 1
    return pivots


def rank(A) -> int:
    M = _integer_rows(A)
    return len(bareiss(M))


def _back_substitute(U, pivots, rhs_cols, n):
    """Solve U[:r] x = rhs for each augmented column index in rhs_cols."""
    r = len(pivots)
    sols = []
    for col in rhs_cols:
        x = [Fraction(0)] * n
        for i in range(r - 1, -1, -1):
            c = pivots[i]
            s = Fraction(U[i][col])
            row = U[i]
            for j in range(c + 1, n):
                if row[j] and x[j]:
                    s -= row[j] * x[j]
            x[c] = s / row[c]
        sols.append(x)
    return sols


def solve(A, b):
    """Exact solution of A x = b for a square or overdetermined system.

    Raises SingularSystem if the solution is not unique or if the
    system is inconsistent (``exc.kind`` is "underdetermined" or
    "inconsistent").
    """
    n = len(A[0]) if A else 0
    M = _integer_rows([list(row) + [bv] for row, bv in zip(A, b)])
    pivots = bareiss(M, n)
    for i in range(len(pivots), len(M)):
        if M[i][n]:
            exc = SingularSystem("inconsistent linear system")
            exc.kind = "inconsistent"
            raise exc
    if len(pivots) < n:
        exc = SingularSystem(f"rank {len(pivots)} < {n} unknowns")
        exc.kind = "underdetermined"
        raise exc
    return _back_substitute(M, pivots, [n], n)[0]


class SolutionOperator:
    """Precomputed solver for A x = b with A of full column rank.

    ``apply(b)`` returns x; ``residual(b)`` returns the consistency
    defects (all zero exactly when b lies in the column space of A).
    """

    def __init__(self, A):
        m = len(A)
        n = len(A[0]) if A else 0
        self.shape = (m, n)
        M = _integer_rows([list(row) + [1 if j == i else 0 for j in range(m)]
                           for i, row in enumerate(A)])
        pivots = bareiss(M, n)
        self.rank = len(pivots)
        if self.rank < n:
            exc = SingularSystem(f"rank {self.rank} < {n} unknowns")
            exc.kind = "underdetermined"
            raise exc
        # solve U x = V e_k for every unit vector: x-map is U^{-1} V[:n]
        cols = _back_substitute(M, pivots, list(range(n, n + m)), n)
        self.matrix = [[cols[k][i] for k in range(m)] for i in range(n)]
        self.checks = [[Fraction(v) for v in M[i][n:]] for i in range(self.rank, m)]

    def apply(self, b):
        return [sum((row[k] * b[k] for k in range(len(b)) if row[k] and b[k]), Fraction(0))
                for row in self.matrix]

    def residual(self, b):
        return [sum((row[k] * b[k] for k in range(len(b)) if row[k] and b[k]), Fraction(0))
                for row in self.checks]


def solution_operator(A) -> SolutionOperator:
    return SolutionOperator(A)


def complex_to_real(A, b=None):
    """Real embedding of a complex system given as ExactScalar entries.

    Unknown x = xr + i*xi maps to [xr; xi]; equations split into real
    and imaginary parts.
    """
    rows = []
    for row in A:
        rows.append([v.re for v in row] + [-v.im for v in row])
    for row in A:
        rows.append([v.im for v in row] + [v.re for v in row])
    if b is None:
        return rows
    rhs = [v.re for v in b] + [v.im for v in b]
    return rows, rhs
