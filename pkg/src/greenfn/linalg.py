"""
Small exact linear algebra over field-like coefficient types.

All routines work generically for coefficient objects supporting +, -, *,
/ (or .inverse()), is_zero() and equality — in practice CycQ and RatFunc.
Matrices are lists of lists; nothing here mutates its arguments.
"""

from __future__ import annotations

from .qpoly import QPoly, RatFunc


def _is_zero(x) -> bool:
    return x.is_zero() if hasattr(x, "is_zero") else x == 0


def solve_linear(matrix, rhs):
    """Solve matrix @ x = rhs for a square nonsingular matrix.

    ``rhs`` is a vector; returns the solution vector in the same coefficient
    type.  Raises ValueError on a singular matrix.
    """
    n = len(matrix)
    aug = [list(row) + [rhs[i]] for i, row in enumerate(matrix)]
    for col in range(n):
        pivot = next((r for r in range(col, n) if not _is_zero(aug[r][col])), None)
        if pivot is None:
            raise ValueError("singular linear system")
        aug[col], aug[pivot] = aug[pivot], aug[col]
        inv = _inverse(aug[col][col])
        aug[col] = [v * inv for v in aug[col]]
        for r in range(n):
            if r != col and not _is_zero(aug[r][col]):
                factor = aug[r][col]
                aug[r] = [a - factor * b for a, b in zip(aug[r], aug[col])]
    return [aug[i][n] for i in range(n)]


def _inverse(x):
    if hasattr(x, "inverse"):
        return x.inverse()
    return 1 / x


def mat_mul(a, b):
    """Matrix product of two lists-of-lists."""
    return [
        [sum_prod(row, [b[k][j] for k in range(len(b))]) for j in range(len(b[0]))]
        for row in a
    ]


def sum_prod(xs, ys):
    it = iter(x * y for x, y in zip(xs, ys))
    out = next(it)
    for v in it:
        out = out + v
    return out


def mat_inverse(matrix):
    """Inverse of a square matrix by Gauss-Jordan elimination."""
    n = len(matrix)
    one = _one_like(matrix)
    zero = one - one
    cols = []
    for j in range(n):
        e = [one if i == j else zero for i in range(n)]
        cols.append(solve_linear(matrix, e))
    return [[cols[j][i] for j in range(n)] for i in range(n)]


def _one_like(matrix):
    sample = matrix[0][0]
    if isinstance(sample, RatFunc):
        return RatFunc(1)
    if isinstance(sample, QPoly):
        return QPoly([1])
    return type(sample)(1)


def determinant(matrix):
    """Determinant by fraction-free (Bareiss) elimination.

    Works for entries in a commutative ring with exact division (``exact_div``
    for QPoly, ordinary division otherwise); in particular the determinant of
    an integer-polynomial matrix comes out as a polynomial, not a fraction.
    """
    n = len(matrix)
    if n == 0:
        return 1
    m = [list(row) for row in matrix]
    sign = 1
    prev = None
    for col in range(n - 1):
        pivot = next((r for r in range(col, n) if not _is_zero(m[r][col])), None)
        if pivot is None:
            return m[0][0] - m[0][0]  # zero of the right type
        if pivot != col:
            m[col], m[pivot] = m[pivot], m[col]
            sign = -sign
        for r in range(col + 1, n):
            for c in range(col + 1, n):
                val = m[r][c] * m[col][col] - m[r][col] * m[col][c]
                if prev is not None:
                    val = _exact_div(val, prev)
                m[r][c] = val
        prev = m[col][col]
    det = m[n - 1][n - 1]
    return -det if sign < 0 else det


def _exact_div(a, b):
    if hasattr(a, "exact_div"):
        return a.exact_div(b)
    return a / b


def identity(n, one):
    zero = one - one
    return [[one if i == j else zero for j in range(n)] for i in range(n)]
