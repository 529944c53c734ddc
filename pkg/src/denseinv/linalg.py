"""Division-free determinants over commutative rings (Berkowitz).

Matrices are lists of rows of ring elements supporting ``+``, ``-`` and ``*``.
No entry is ever divided, so the routines are sound over rings with zero
divisors such as C^m.
"""
from __future__ import annotations

from typing import Sequence

from .algebra import Algebra, Element


def _matvec(M, v, zero):
    out = []
    for row in M:
        acc = zero
        for a, b in zip(row, v):
            acc = acc + a * b
        out.append(acc)
    return out


def _dot(u, v, zero):
    acc = zero
    for a, b in zip(u, v):
        acc = acc + a * b
    return acc


def berkowitz_charpoly(M: Sequence[Sequence[Element]], algebra: Algebra) -> list[Element]:
    """Coefficients of ``det(lambda*I - M)``, highest power first.

    The result has ``N + 1`` entries and starts with the unit. Leading
    principal submatrices are grown one row/column at a time; each step
    multiplies the previous coefficient vector by a lower-triangular
    Toeplitz matrix whose first column is ``1, -a, -R C, -R A C, ...``.
    """
    N = len(M)
    one, zero = algebra.one(), algebra.zero()
    poly = [one]
    for r in range(N):
        a = M[r][r]
        R = [M[r][j] for j in range(r)]
        Cc = [M[i][r] for i in range(r)]
        A = [list(M[i][:r]) for i in range(r)]
        col = [one, -a]
        v = Cc
        for _ in range(r):
            col.append(-_dot(R, v, zero))
            v = _matvec(A, v, zero)
        # Toeplitz product, truncated to r + 2 coefficients
        new = []
        for i in range(r + 2):
            acc = zero
            for j in range(max(0, i - len(col) + 1), min(i, r) + 1):
                acc = acc + col[i - j] * poly[j]
            new.append(acc)
        poly = new
    return poly


def det(M: Sequence[Sequence[Element]], algebra: Algebra) -> Element:
    N = len(M)
    if any(len(row) != N for row in M):
        raise ValueError("determinant needs a square matrix")
    c0 = berkowitz_charpoly(M, algebra)[-1]
    return c0 if N % 2 == 0 else -c0


def adjugate_column(M: Sequence[Sequence[Element]], algebra: Algebra,
                    col: int = 0) -> tuple[list[Element], Element]:
    """Return ``(adj(M) e_col, det(M))`` without any division.

    Uses Cayley-Hamilton: with ``det(lambda I - M) = sum c_k lambda^k``,
    ``adj(M) = (-1)^(N-1) * (M^(N-1) + c_{N-1} M^(N-2) + ... + c_1 I)``.
    """
    N = len(M)
    one, zero = algebra.one(), algebra.zero()
    cp = berkowitz_charpoly(M, algebra)  # cp[k] multiplies lambda^(N-k)
    # Horner on the Krylov vectors: Q e = M(...(M e + c_{N-1} e)...) + c_1 e
    e = [one if i == col else zero for i in range(N)]
    acc = list(e)
    for k in range(1, N):
        acc = _matvec(M, acc, zero)
        acc = [p + cp[k] * q for p, q in zip(acc, e)]
    sign = 1.0 if N % 2 == 1 else -1.0
    adj_col = [sign * x for x in acc]
    d = cp[-1] if N % 2 == 0 else -cp[-1]
    return adj_col, d
