"""Beurling algebras l^1(Z, w) on finitely supported Laurent polynomials.

The character space of l^1(Z, w) is the closed annulus
``rho_minus <= |w| <= rho_plus``; the Gelfand transform of a Laurent
polynomial is ``sum c_k w^k``. Invertibility, winding numbers and the
obstruction test below are all decided from the root list of that transform.
"""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from typing import ClassVar, Optional, Sequence

import numpy as np
from scipy.signal import lfilter

from .algebra import (
    INVERT_TOLERANCE,
    Algebra,
    AlgebraError,
    CertificationFailure,
    Element,
    InvertCertificate,
    NotInvertible,
    NotRepresentable,
    _frozen,
)

ROOT_TOL = 1e-9
MAX_TRUNCATION = 1 << 16

WEIGHT_KINDS = ("constant", "geometric", "one_sided", "table")


class WeightError(ValueError):
    pass


class WindingUndefined(AlgebraError):
    """The Gelfand transform vanishes on a boundary circle."""


@dataclass(frozen=True)
class AnnulusSpectrum:
    rho_minus: float
    rho_plus: float

    def __post_init__(self):
        if not 0 < self.rho_minus <= self.rho_plus:
            raise ValueError(f"need 0 < rho_minus <= rho_plus, got {self.rho_minus}, {self.rho_plus}")

    @property
    def is_circle(self) -> bool:
        return self.rho_minus == self.rho_plus

    def contains(self, modulus, tol: float = ROOT_TOL):
        modulus = np.asarray(modulus)
        return (modulus >= self.rho_minus * (1 - tol)) & (modulus <= self.rho_plus * (1 + tol))


@dataclass(frozen=True)
class WeightSequence:
    """A weight on Z given by a closed-form generator.

    kinds:
      ``constant``   w_k = 1
      ``geometric``  w_k = r^|k|                (r >= 1)
      ``one_sided``  w_k = r^k for k >= 0, else 1 (r >= 1)
      ``table``      ``values`` on ``[lo, lo + len(values))`` with geometric
                     tails: ratio ``r`` above the window, ``r_minus`` below it
    """

    kind: str = "constant"
    r: float = 1.0
    lo: int = 0
    values: tuple = ()
    r_minus: Optional[float] = None

    def __post_init__(self):
        if self.kind not in WEIGHT_KINDS:
            raise WeightError(f"unknown weight kind {self.kind!r}")
        if self.kind != "constant" and self.r < 1:
            raise WeightError("the growth ratio r must be >= 1")
        if self.kind == "table":
            vals = tuple(float(v) for v in self.values)
            object.__setattr__(self, "values", vals)
            if not vals or any(v <= 0 for v in vals):
                raise WeightError("table weights must be positive")
            if not self.lo <= 0 < self.lo + len(vals):
                raise WeightError("table window must contain index 0")
            if abs(vals[-self.lo] - 1.0) > 1e-12:
                raise WeightError("weight at 0 must be 1")
            if self.r_minus is not None and self.r_minus < 1:
                raise WeightError("r_minus must be >= 1")
            self._check_submultiplicative()

    @property
    def _r_minus(self) -> float:
        return self.r if self.r_minus is None else self.r_minus

    def log_weight(self, k):
        """Natural log of the weight at integer index/array ``k``."""
        k = np.asarray(k)
        if self.kind == "constant":
            return np.zeros(k.shape)
        lr = math.log(self.r)
        if self.kind == "geometric":
            return np.abs(k) * lr
        if self.kind == "one_sided":
            return np.maximum(k, 0) * lr
        logs = np.log(np.asarray(self.values))
        hi = self.lo + len(self.values) - 1
        inside = np.clip(k, self.lo, hi) - self.lo
        out = logs[inside]
        out = np.where(k > hi, logs[-1] + (k - hi) * lr, out)
        out = np.where(k < self.lo, logs[0] + (self.lo - k) * math.log(self._r_minus), out)
        return out

    def __call__(self, k):
        return np.exp(self.log_weight(k))

    def _check_submultiplicative(self, span: Optional[int] = None):
        span = span or (len(self.values) + abs(self.lo) + 4)
        ks = np.arange(-2 * span, 2 * span + 1)
        m, n = np.meshgrid(ks, ks)
        lhs = self.log_weight(m + n)
        rhs = self.log_weight(m) + self.log_weight(n)
        bad = np.argwhere(lhs > rhs + 1e-12)
        if bad.size:
            i, j = bad[0]
            raise WeightError(f"not submultiplicative at m={m[i, j]}, n={n[i, j]}")

    def radii(self) -> AnnulusSpectrum:
        if self.kind == "constant":
            return AnnulusSpectrum(1.0, 1.0)
        if self.kind == "geometric":
            return AnnulusSpectrum(1.0 / self.r, self.r)
        if self.kind == "one_sided":
            return AnnulusSpectrum(1.0, self.r)
        return AnnulusSpectrum(1.0 / self._r_minus, self.r)


def radii(weight: WeightSequence) -> AnnulusSpectrum:
    return weight.radii()


def _trim(lo: int, coeffs: np.ndarray):
    nz = np.flatnonzero(coeffs)
    if nz.size == 0:
        return 0, _frozen(np.zeros(0))
    return lo + int(nz[0]), _frozen(coeffs[nz[0]:nz[-1] + 1])


@dataclass(frozen=True)
class BeurlingAlgebra(Algebra):
    """Finitely supported elements of l^1(Z, weight) under convolution.

    Element data is ``(lo, coeffs)``: the coefficient of ``delta_{lo + j}``
    is ``coeffs[j]``. Stored values are always trimmed.
    """

    weight: WeightSequence = WeightSequence()
    kind: ClassVar[str] = "beurling"

    def label(self):
        return f"l1(Z,{self.weight.kind}{'' if self.weight.kind == 'constant' else f' r={self.weight.r}'})"

    @property
    def spectrum(self) -> AnnulusSpectrum:
        return self.weight.radii()

    def element(self, coeffs: Sequence, lo: int = 0) -> Element:
        return Element(self, _trim(int(lo), np.asarray(coeffs, dtype=complex)))

    def delta(self, k: int, c: complex = 1.0) -> Element:
        return self.element([c], lo=k)

    def from_dict(self, terms: dict) -> Element:
        if not terms:
            return self.zero()
        lo, hi = min(terms), max(terms)
        coeffs = np.zeros(hi - lo + 1, dtype=complex)
        for k, v in terms.items():
            coeffs[k - lo] += v
        return self.element(coeffs, lo)

    # raw hooks
    def _add(self, a, b):
        (la, ca), (lb, cb) = a, b
        if ca.size == 0:
            return b
        if cb.size == 0:
            return a
        lo = min(la, lb)
        hi = max(la + ca.size, lb + cb.size)
        out = np.zeros(hi - lo, dtype=complex)
        out[la - lo:la - lo + ca.size] += ca
        out[lb - lo:lb - lo + cb.size] += cb
        return _trim(lo, out)

    def _mul(self, a, b):
        (la, ca), (lb, cb) = a, b
        if ca.size == 0 or cb.size == 0:
            return 0, _frozen(np.zeros(0))
        return _trim(la + lb, np.convolve(ca, cb))

    def _scale(self, a, c):
        return _trim(a[0], a[1] * c)

    def _equal(self, a, b):
        return a[0] == b[0] and np.array_equal(a[1], b[1])

    def _key(self, a):
        return (a[0], a[1].tobytes())

    def _is_zero(self, a):
        return a[1].size == 0

    def _format(self, a):
        lo, c = a
        if c.size == 0:
            return "0"
        return " + ".join(f"({v:.6g})d{lo + j}" for j, v in enumerate(c) if v != 0)

    def zero(self):
        return Element(self, (0, _frozen(np.zeros(0))))

    def one(self):
        return self.delta(0)

    def _weighted_abs_sum(self, lo: int, coeffs: np.ndarray) -> float:
        mod = np.abs(coeffs)
        nz = mod > 0
        if not np.any(nz):
            return 0.0
        ks = lo + np.flatnonzero(nz)
        return float(np.sum(np.exp(np.log(mod[nz]) + self.weight.log_weight(ks))))

    def norm(self, x):
        lo, c = self.check(x).data
        return self._weighted_abs_sum(lo, c)

    def is_invertible(self, x):
        if x.is_zero():
            return False
        return gelfand_roots(x).invertible

    def invert(self, x, tol=INVERT_TOLERANCE):
        self.check(x)
        if x.is_zero():
            raise NotInvertible("zero element", witness=0j)
        info = gelfand_roots(x)
        if not info.invertible:
            w0 = complex(info.roots[info.in_annulus][0])
            raise NotInvertible(f"Gelfand transform vanishes at w={w0:.6g} in the annulus", witness=w0)
        lo, c = x.data
        best = math.inf
        K = 16
        while K <= MAX_TRUNCATION:
            inv = Element(self, _laurent_inverse(lo, c, info.roots, self.spectrum, K))
            resid = self.certify(x, inv)
            best = min(best, resid)
            if resid < tol:
                return InvertCertificate(inv, resid)
            K *= 2
        raise NotRepresentable(f"no truncation up to {MAX_TRUNCATION} terms reached residual {tol:.1e}"
                               f" (best {best:.3e})")

    def random(self, rng, scale=1.0):
        lo = int(rng.integers(-2, 1))
        length = int(rng.integers(1, 5))
        z = rng.standard_normal(length) + 1j * rng.standard_normal(length)
        return self.element(scale * z / np.sqrt(2), lo)

    def sample_ball(self, center, radius, rng):
        lo, c = self.check(center).data
        if c.size == 0:
            lo, width = 0, 1
        else:
            width = c.size
        z = rng.standard_normal(width) + 1j * rng.standard_normal(width)
        dz = self._weighted_abs_sum(lo, z)
        step = z * (radius * rng.uniform(0.0, 1.0) / dz)
        return center + Element(self, _trim(lo, step))


def _laurent_inverse(lo: int, c: np.ndarray, roots: np.ndarray, annulus: AnnulusSpectrum, K: int):
    """Truncated Laurent expansion of ``1/f`` valid on the annulus.

    ``f = w^lo q(w)``; ``q`` splits into roots inside and outside the annulus,
    and a Bezout identity ``A q_out + B q_in = 1`` gives the partial
    fractions ``A/q_in`` (negative powers) and ``B/q_out`` (non-negative).
    Each expands by a short linear recurrence.
    """
    mod = np.abs(roots)
    inner = roots[mod < annulus.rho_minus]
    outer = roots[mod > annulus.rho_plus]
    q_in = np.poly(inner) if inner.size else np.ones(1, dtype=complex)  # descending, monic
    q_out = c[-1] * (np.poly(outer) if outer.size else np.ones(1, dtype=complex))
    d_in, d_out = inner.size, outer.size
    if d_in == 0:
        A, B = np.zeros(0), np.ones(1, dtype=complex)
    elif d_out == 0:
        A, B = np.array([1.0 / q_out[0]]), np.zeros(0)
        A = np.concatenate([A, np.zeros(d_in - 1)])
    else:
        A, B = _bezout(q_in[::-1], q_out[::-1])
    impulse = np.zeros(K, dtype=complex)
    impulse[0] = 1.0
    pos = lfilter(B, q_out[::-1], impulse) if B.size else np.zeros(K, dtype=complex)
    if d_in:
        num = np.concatenate([[0.0], A[::-1]])
        neg = lfilter(num, q_in, np.concatenate([impulse, [0.0]]))[1:]
    else:
        neg = np.zeros(K, dtype=complex)
    coeffs = np.concatenate([neg[::-1], pos])
    # subnormal values carry no relative precision and the weights would amplify the noise
    coeffs[np.abs(coeffs) < np.finfo(float).tiny] = 0
    return _trim(-lo - K, coeffs)


def _bezout(qi: np.ndarray, qo: np.ndarray):
    """Solve ``A*qo + B*qi = 1`` with ``deg A < deg qi``, ``deg B < deg qo`` (ascending coefficients)."""
    di, do = qi.size - 1, qo.size - 1
    size = di + do
    M = np.zeros((size, size), dtype=complex)
    for j in range(di):
        M[j:j + do + 1, j] = qo
    for j in range(do):
        M[j:j + di + 1, di + j] = qi
    rhs = np.zeros(size, dtype=complex)
    rhs[0] = 1.0
    sol = np.linalg.solve(M, rhs)
    return sol[:di], sol[di:]


@dataclass(frozen=True)
class GelfandRoots:
    """Roots of ``w^(-lo) * sum c_k w^k`` and the invertibility verdict on the annulus."""

    roots: np.ndarray
    lo: int
    annulus: AnnulusSpectrum
    in_annulus: np.ndarray

    @property
    def moduli(self) -> np.ndarray:
        return np.abs(self.roots)

    @property
    def invertible(self) -> bool:
        return not bool(np.any(self.in_annulus))


def _poly_roots(c: np.ndarray) -> np.ndarray:
    if c.size <= 1:
        return np.zeros(0, dtype=complex)
    return np.roots(c[::-1]).astype(complex)


def gelfand_roots(x: Element, tol: float = ROOT_TOL) -> GelfandRoots:
    alg = x.algebra
    if not isinstance(alg, BeurlingAlgebra):
        raise TypeError("gelfand_roots needs a Beurling element")
    if x.is_zero():
        raise ValueError("the zero element has no root list")
    lo, c = x.data
    roots = _poly_roots(np.asarray(c))
    s = alg.spectrum
    return GelfandRoots(roots, lo, s, s.contains(np.abs(roots), tol))


def winding_pair(x: Element, s: Optional[AnnulusSpectrum] = None,
                 tol: float = ROOT_TOL) -> tuple[int, int]:
    """Winding numbers of the transform around 0 on the inner and outer circles.

    By the argument principle the winding on ``|w| = rho`` is ``lo`` plus the
    number of roots of modulus below ``rho``.
    """
    info = gelfand_roots(x, tol)
    s = s or info.annulus
    mod = info.moduli
    out = []
    for rho in (s.rho_minus, s.rho_plus):
        if np.any(np.abs(mod - rho) <= tol * rho):
            raise WindingUndefined(f"transform vanishes on |w| = {rho}")
        out.append(info.lo + int(np.sum(mod < rho)))
    return out[0], out[1]


def circle_min_modulus(x: Element, rho: float, samples: int = 4096) -> float:
    """Certified lower bound for ``min |f(w)|`` over ``|w| = rho``.

    A grid minimum is corrected by the Lipschitz constant of ``theta -> f``,
    ``sum |k| |c_k| rho^k``, times half the grid spacing.
    """
    lo, c = x.data
    c = np.asarray(c)
    ks = lo + np.arange(c.size)
    samples = max(samples, 64 * c.size)
    theta = 2 * np.pi * np.arange(samples) / samples
    w = rho * np.exp(1j * theta)
    vals = np.polyval(c[::-1], w) * w ** lo
    lip = float(np.sum(np.abs(ks) * np.abs(c) * rho ** ks.astype(float)))
    return max(0.0, float(np.min(np.abs(vals))) - lip * np.pi / samples)


class Obstruction(str, enum.Enum):
    OBSTRUCTED = "Obstructed"
    UNOBSTRUCTED = "Unobstructed"


@dataclass(frozen=True)
class ObstructionVerdict:
    verdict: Obstruction
    windings: tuple
    stability_radius: float

    @property
    def obstructed(self) -> bool:
        return self.verdict is Obstruction.OBSTRUCTED


def obstruction_verdict(x: Element, s: Optional[AnnulusSpectrum] = None) -> ObstructionVerdict:
    """Compare boundary windings; a mismatch forces a zero inside the annulus.

    ``stability_radius`` is the smaller of the two boundary minimum moduli.
    Any perturbation of smaller norm keeps both windings (Rouche), so an
    obstructed element stays non-invertible throughout that ball.
    """
    s = s or x.algebra.spectrum
    wi, wo = winding_pair(x, s)
    radius = min(circle_min_modulus(x, s.rho_minus), circle_min_modulus(x, s.rho_plus))
    verdict = Obstruction.OBSTRUCTED if wi != wo else Obstruction.UNOBSTRUCTED
    return ObstructionVerdict(verdict, (wi, wo), radius)


class DiscClosure(str, enum.Enum):
    IN_CLOSURE = "InClosure"
    NOT_IN_CLOSURE = "NotInClosure"
    IS_ZERO = "IsZero"


def disc_closure_membership(coeffs: Sequence[complex], tol: float = ROOT_TOL) -> DiscClosure:
    """Is the polynomial ``sum coeffs[j] z^j`` in the closure of the disc algebra's invertibles?

    It is exactly when no zero lies in the open unit disc.
    """
    c = np.trim_zeros(np.asarray(coeffs, dtype=complex), "b")
    if c.size == 0 or not np.any(c):
        return DiscClosure.IS_ZERO
    roots = _poly_roots(c)
    if np.any(np.abs(roots) < 1 - tol):
        return DiscClosure.NOT_IN_CLOSURE
    return DiscClosure.IN_CLOSURE
