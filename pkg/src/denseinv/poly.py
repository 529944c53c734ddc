"""Polynomials over a commutative algebra and their resultants against monic ones."""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np

from .algebra import Algebra, DescriptorMismatch, Element, as_element
from .linalg import det


@dataclass(frozen=True)
class AlgebraPoly:
    """Polynomial with coefficients in ``algebra``, lowest degree first."""

    algebra: Algebra
    coeffs: tuple

    def __post_init__(self):
        coeffs = tuple(as_element(self.algebra, c) for c in self.coeffs)
        object.__setattr__(self, "coeffs", coeffs)

    @classmethod
    def of(cls, algebra: Algebra, coeffs: Sequence) -> "AlgebraPoly":
        return cls(algebra, tuple(coeffs))

    @property
    def degree(self) -> Optional[int]:
        """Degree after trimming zero coefficients; ``None`` for the zero polynomial."""
        for j in range(len(self.coeffs) - 1, -1, -1):
            if not self.coeffs[j].is_zero():
                return j
        return None

    def coeff(self, j: int) -> Element:
        return self.coeffs[j] if 0 <= j < len(self.coeffs) else self.algebra.zero()

    def padded(self, length: int) -> tuple:
        return tuple(self.coeff(j) for j in range(length))

    def trimmed(self) -> "AlgebraPoly":
        d = self.degree
        return AlgebraPoly(self.algebra, self.coeffs[: (0 if d is None else d + 1)])

    def _check(self, other: "AlgebraPoly"):
        if other.algebra != self.algebra:
            raise DescriptorMismatch("polynomials over different algebras")

    def __add__(self, other: "AlgebraPoly") -> "AlgebraPoly":
        self._check(other)
        m = max(len(self.coeffs), len(other.coeffs))
        return AlgebraPoly(self.algebra, tuple(self.coeff(j) + other.coeff(j) for j in range(m)))

    def __sub__(self, other: "AlgebraPoly") -> "AlgebraPoly":
        self._check(other)
        m = max(len(self.coeffs), len(other.coeffs))
        return AlgebraPoly(self.algebra, tuple(self.coeff(j) - other.coeff(j) for j in range(m)))

    def __mul__(self, other):
        if isinstance(other, AlgebraPoly):
            self._check(other)
            if not self.coeffs or not other.coeffs:
                return AlgebraPoly(self.algebra, ())
            out = [self.algebra.zero()] * (len(self.coeffs) + len(other.coeffs) - 1)
            for i, a in enumerate(self.coeffs):
                if a.is_zero():
                    continue
                for j, b in enumerate(other.coeffs):
                    out[i + j] = out[i + j] + a * b
            return AlgebraPoly(self.algebra, tuple(out))
        return AlgebraPoly(self.algebra, tuple(c * other for c in self.coeffs))

    __rmul__ = __mul__

    def __call__(self, x) -> Element:
        x = as_element(self.algebra, x)
        acc = self.algebra.zero()
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc


@dataclass(frozen=True)
class MonicPoly:
    """Monic polynomial of degree ``n >= 1``; the leading coefficient is exactly one."""

    base: AlgebraPoly

    def __post_init__(self):
        trimmed = self.base.trimmed()
        if trimmed.degree is None or trimmed.degree < 1:
            raise ValueError("monic polynomial needs degree >= 1")
        if trimmed.coeffs[-1] != self.base.algebra.one():
            raise ValueError("leading coefficient must equal the algebra unit")
        object.__setattr__(self, "base", trimmed)

    @classmethod
    def from_lower(cls, algebra: Algebra, lower: Sequence) -> "MonicPoly":
        """Build ``a_0 + ... + a_{n-1} x^{n-1} + x^n`` from ``[a_0, ..., a_{n-1}]``."""
        return cls(AlgebraPoly(algebra, tuple(lower) + (algebra.one(),)))

    @property
    def algebra(self) -> Algebra:
        return self.base.algebra

    @property
    def n(self) -> int:
        return len(self.base.coeffs) - 1

    @property
    def lower(self) -> tuple:
        """The coefficients ``a_0 .. a_{n-1}``."""
        return self.base.coeffs[:-1]

    def __call__(self, x) -> Element:
        return self.base(x)


def divide_by_monic(f: AlgebraPoly, alpha: MonicPoly) -> tuple[AlgebraPoly, AlgebraPoly]:
    """Monic long division ``f = q * alpha + r`` with ``deg r < n``."""
    if f.algebra != alpha.algebra:
        raise DescriptorMismatch("dividend and divisor live over different algebras")
    alg, n = alpha.algebra, alpha.n
    rem = list(f.coeffs)
    if len(rem) <= n:
        return AlgebraPoly(alg, ()), AlgebraPoly(alg, tuple(rem))
    quot = [alg.zero()] * (len(rem) - n)
    a = alpha.base.coeffs
    for k in range(len(rem) - 1, n - 1, -1):
        lead = rem[k]
        if lead.is_zero():
            continue
        quot[k - n] = lead
        for j in range(n + 1):
            rem[k - n + j] = rem[k - n + j] - lead * a[j]
    return AlgebraPoly(alg, tuple(quot)), AlgebraPoly(alg, tuple(rem[:n]))


def reduce_mod(f: AlgebraPoly, alpha: MonicPoly) -> tuple:
    """Canonical representative of ``f`` modulo ``alpha`` as exactly ``n`` coefficients."""
    _, r = divide_by_monic(f, alpha)
    return r.padded(alpha.n)


def _beta_coeffs(alpha: MonicPoly, beta) -> tuple:
    if isinstance(beta, AlgebraPoly):
        if beta.algebra != alpha.algebra:
            raise DescriptorMismatch("alpha and beta live over different algebras")
        d = beta.degree
        if d is not None and d >= alpha.n:
            raise ValueError(f"beta has degree {d} >= {alpha.n}; reduce it modulo alpha first")
        return beta.padded(alpha.n)
    coeffs = tuple(as_element(alpha.algebra, c) for c in beta)
    if len(coeffs) > alpha.n:
        return _beta_coeffs(alpha, AlgebraPoly(alpha.algebra, coeffs))
    return coeffs + (alpha.algebra.zero(),) * (alpha.n - len(coeffs))


def sylvester_matrix(alpha: MonicPoly, beta) -> list[list[Element]]:
    """The (2n-1)x(2n-1) matrix: n-1 shifted rows of alpha, then n shifted rows of beta.

    Coefficients run from the highest power down along each row.
    """
    n, alg = alpha.n, alpha.algebra
    b = _beta_coeffs(alpha, beta)
    size = 2 * n - 1
    zero = alg.zero()
    a_desc = list(reversed(alpha.base.coeffs))  # 1, a_{n-1}, ..., a_0
    b_desc = list(reversed(b))  # b_{n-1}, ..., b_0
    rows = []
    for i in range(n - 1):
        row = [zero] * size
        row[i:i + n + 1] = a_desc
        rows.append(row)
    for i in range(n):
        row = [zero] * size
        row[i:i + n] = b_desc
        rows.append(row)
    return rows


def resultant(alpha: MonicPoly, beta) -> Element:
    """``res(alpha, beta)`` for ``deg beta <= n - 1`` via the Sylvester determinant."""
    return det(sylvester_matrix(alpha, beta), alpha.algebra)


def multiplication_matrix(alpha: MonicPoly, beta) -> list[list[Element]]:
    """Matrix of multiplication by beta on A[x]/(alpha) in the basis 1, x, ..., x^(n-1).

    Column j holds the reduced coefficients of ``beta * x^j``.
    """
    n, alg = alpha.n, alpha.algebra
    b = list(_beta_coeffs(alpha, beta))
    lower = alpha.lower
    cols = []
    cur = b
    for _ in range(n):
        cols.append(cur)
        # multiply by x: shift up, fold x^n = -sum a_j x^j
        top = cur[-1]
        shifted = [alg.zero()] + cur[:-1]
        cur = [s - top * a for s, a in zip(shifted, lower)]
    return [[cols[j][i] for j in range(n)] for i in range(n)]


def resultant_via_multiplication_matrix(alpha: MonicPoly, beta) -> Element:
    return det(multiplication_matrix(alpha, beta), alpha.algebra)


@dataclass(frozen=True)
class ResultantPolynomial:
    """``P(c) = p_0 + p_1 c + ... + p_{n-1} c^{n-1} + c^n`` with algebra coefficients."""

    coeffs: tuple  # p_0 .. p_{n-1}
    algebra: Algebra

    @property
    def n(self) -> int:
        return len(self.coeffs)

    def full_coeffs(self) -> tuple:
        return tuple(self.coeffs) + (self.algebra.one(),)

    def __call__(self, c) -> Element:
        return AlgebraPoly(self.algebra, self.full_coeffs())(c)


def resultant_poly_in_c(alpha: MonicPoly, b_tail: Sequence) -> ResultantPolynomial:
    """Recover ``P(c) = res(alpha, c + b_1 x + ... + b_{n-1} x^{n-1})`` as a polynomial in c.

    ``P`` is evaluated at ``n + 1`` points on a circle of radius
    ``1 + max(norms)`` and the coefficients are read off with an inverse DFT.
    The recovered leading coefficient is discarded in favour of the exact unit.
    """
    alg, n = alpha.algebra, alpha.n
    tail = [as_element(alg, b) for b in b_tail]
    if len(tail) != n - 1:
        raise ValueError(f"b_tail must have length {n - 1}")
    scale = 1.0 + max([alg.norm(v) for v in list(alpha.lower) + tail] + [0.0])
    m = n + 1
    roots = np.exp(2j * np.pi * np.arange(m) / m)
    values = [resultant(alpha, [alg.scalar(scale * z)] + tail) for z in roots]
    coeffs = []
    for j in range(n):
        acc = alg.zero()
        for i in range(m):
            acc = acc + values[i] * (roots[i] ** (-j) / m)
        coeffs.append(acc * (scale ** (-j)))
    return ResultantPolynomial(tuple(coeffs), alg)


@dataclass(frozen=True)
class PolyMap:
    """A polynomial map ``A -> A`` with algebra coefficients (lowest first)."""

    coeffs: tuple
    algebra: Algebra

    def __call__(self, c) -> Element:
        return AlgebraPoly(self.algebra, self.coeffs)(c)


def formal_derivatives(P: ResultantPolynomial) -> list[PolyMap]:
    """``[P, P', ..., P^(n-1)]`` with ``P^(k)(c) = sum_{j>=k} j!/(j-k)! p_j c^(j-k)``."""
    full = P.full_coeffs()
    n = P.n
    out = []
    for k in range(n):
        out.append(PolyMap(tuple(full[j] * float(math.perm(j, k)) for j in range(k, n + 1)),
                           P.algebra))
    return out
