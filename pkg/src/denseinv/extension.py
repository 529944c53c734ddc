"""Arens-Hoffman extensions ``A[x]/(alpha)`` with the weighted coefficient norm."""
from __future__ import annotations

from dataclasses import dataclass
from typing import ClassVar, Optional, Sequence

from .algebra import (
    INVERT_TOLERANCE,
    Algebra,
    CertificationFailure,
    DescriptorMismatch,
    Element,
    InvertCertificate,
    NotInvertible,
    as_element,
)
from .linalg import adjugate_column
from .poly import AlgebraPoly, MonicPoly, multiplication_matrix, reduce_mod, resultant

T_FLOOR = 1.0
T_SAFETY = 1.25


class NormParameterError(ValueError):
    pass


def _norm_gap(t: float, coeff_norms: Sequence[float]) -> float:
    n = len(coeff_norms)
    return t ** n - sum(a * t ** j for j, a in enumerate(coeff_norms))


def minimal_t(alpha: MonicPoly) -> float:
    """Smallest ``t >= 1`` with ``t^n >= sum_j ||a_j|| t^j`` (bisection)."""
    norms = [alpha.algebra.norm(a) for a in alpha.lower]
    if _norm_gap(T_FLOOR, norms) >= 0:
        return T_FLOOR
    lo, hi = T_FLOOR, max(2.0, 1.0 + sum(norms))
    while _norm_gap(hi, norms) < 0:
        hi *= 2
    for _ in range(200):
        mid = 0.5 * (lo + hi)
        if _norm_gap(mid, norms) >= 0:
            hi = mid
        else:
            lo = mid
        if hi - lo <= 1e-15 * hi:
            break
    return hi


@dataclass(frozen=True)
class ArensHoffman(Algebra):
    """The extension ``A_alpha = A[x]/(alpha(x))`` of ``alpha.algebra``.

    Elements are stored as their unique representative of degree < n, a
    tuple of n base elements. The norm is ``sum_j ||b_j|| t^j``.
    """

    alpha: MonicPoly
    t: float
    kind: ClassVar[str] = "arens-hoffman-over"

    def __post_init__(self):
        if not self.t > 0:
            raise NormParameterError("t must be positive")
        norms = [self.base.norm(a) for a in self.alpha.lower]
        if _norm_gap(self.t, norms) < -1e-12 * self.t ** self.n:
            raise NormParameterError(
                f"t={self.t} violates t^n >= sum ||a_j|| t^j; minimal admissible t is {minimal_t(self.alpha):.6g}")

    @property
    def base(self) -> Algebra:
        return self.alpha.algebra

    @property
    def n(self) -> int:
        return self.alpha.n

    def label(self):
        return f"{self.base.label()}[x]/(deg {self.n})"

    # construction helpers
    def element(self, coeffs: Sequence) -> Element:
        """Coset of ``sum coeffs[j] x^j``; reduced modulo alpha when the degree is >= n."""
        poly = AlgebraPoly(self.base, tuple(coeffs))
        return Element(self, reduce_mod(poly, self.alpha))

    def xbar(self) -> Element:
        return self.element([self.base.zero(), self.base.one()])

    def embed(self, a) -> Element:
        return self.element([as_element(self.base, a)])

    def rep(self, u: Element) -> AlgebraPoly:
        return AlgebraPoly(self.base, self.check(u).data)

    # raw hooks
    def _add(self, a, b):
        return tuple(x + y for x, y in zip(a, b))

    def _sub(self, a, b):
        return tuple(x - y for x, y in zip(a, b))

    def _mul(self, a, b):
        return reduce_mod(AlgebraPoly(self.base, a) * AlgebraPoly(self.base, b), self.alpha)

    def _scale(self, a, c):
        return tuple(x * c for x in a)

    def _equal(self, a, b):
        return all(x == y for x, y in zip(a, b))

    def _key(self, a):
        return tuple(hash(x) for x in a)

    def _is_zero(self, a):
        return all(x.is_zero() for x in a)

    def _format(self, a):
        return " + ".join(f"[{x.algebra._format(x.data)}]x^{j}" for j, x in enumerate(a))

    def zero(self):
        return Element(self, (self.base.zero(),) * self.n)

    def one(self):
        return self.embed(self.base.one())

    def norm(self, u):
        return float(sum(self.base.norm(b) * self.t ** j for j, b in enumerate(self.check(u).data)))

    def resultant_of(self, u: Element) -> Element:
        return resultant(self.alpha, list(self.check(u).data))

    def is_invertible(self, u):
        return self.base.is_invertible(self.resultant_of(u))

    def invert(self, u, tol=INVERT_TOLERANCE):
        """Invert via the resultant criterion and a division-free adjugate.

        Column j of the multiplication matrix ``M`` holds ``u * x^j``, so the
        inverse's coefficients solve ``M y = e_0``; ``y = adj(M) e_0 / det(M)``.
        """
        r = self.resultant_of(u)
        try:
            self.base.invert(r, tol)
        except NotInvertible as exc:
            raise NotInvertible("resultant is not invertible in the base algebra", witness=r) from exc
        M = multiplication_matrix(self.alpha, list(u.data))
        adj_col, d = adjugate_column(M, self.base)
        d_inv = self.base.invert(d, tol).inverse
        inv = Element(self, tuple(y * d_inv for y in adj_col))
        residual = self.certify(u, inv)
        if not residual < tol:
            raise CertificationFailure(f"residual {residual:.3e} >= {tol:.1e}", residual)
        return InvertCertificate(inv, residual)

    def random(self, rng, scale=1.0):
        return Element(self, tuple(self.base.random(rng, scale / self.t ** j) for j in range(self.n)))

    def sample_ball(self, center, radius, rng):
        self.check(center)
        share = radius / self.n
        return Element(self, tuple(self.base.sample_ball(b, share / self.t ** j, rng)
                                   for j, b in enumerate(center.data)))


def make_extension(base: Algebra, alpha, t: Optional[float] = None) -> ArensHoffman:
    """Build ``A_alpha``; ``t`` defaults to 1.25 times the minimal admissible value.

    ``alpha`` may be a :class:`MonicPoly` or the list ``[a_0, ..., a_{n-1}]``
    of its lower coefficients.
    """
    if not isinstance(alpha, MonicPoly):
        alpha = MonicPoly.from_lower(base, list(alpha))
    if alpha.algebra != base:
        raise DescriptorMismatch("alpha is not a polynomial over the given base")
    if t is None:
        t = T_SAFETY * minimal_t(alpha)
    return ArensHoffman(alpha, float(t))


def embed(a: Element, ext: ArensHoffman) -> Element:
    return ext.embed(ext.base.check(a))


def tower(base: Algebra, alphas: Sequence, ts: Optional[Sequence] = None) -> Algebra:
    """Left fold of :func:`make_extension`.

    Entries of ``alphas`` may be callables taking the current algebra and
    returning the monic polynomial over it, since later polynomials usually
    refer to the generator of the previous step.
    """
    current = base
    for i, alpha in enumerate(alphas):
        if callable(alpha) and not isinstance(alpha, MonicPoly):
            alpha = alpha(current)
        current = make_extension(current, alpha, None if ts is None else ts[i])
    return current


def dimension(algebra: Algebra) -> int:
    """Complex dimension of a finite-space algebra or a tower over one."""
    if isinstance(algebra, ArensHoffman):
        return algebra.n * dimension(algebra.base)
    n_pts = getattr(algebra, "n_pts", None)
    if n_pts is None:
        raise TypeError(f"{algebra.label()} is infinite dimensional")
    return n_pts

