"""Commutative unital Banach algebras: the shared contract and the finite-space instance.

Every concrete algebra is a frozen dataclass acting as its own descriptor.
Elements are immutable :class:`Element` values that carry a reference to the
algebra they belong to; arithmetic between elements of different algebras is
rejected with :class:`DescriptorMismatch`.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Any, ClassVar, Sequence

import numpy as np

INVERT_TOLERANCE = 1e-9
SINGULAR_THRESHOLD = 1e-12


class AlgebraError(Exception):
    pass


class DescriptorMismatch(AlgebraError):
    pass


class NotInvertible(AlgebraError):
    """Raised when an element has no inverse; ``witness`` says why."""

    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness


class NotRepresentable(AlgebraError):
    """The element is invertible but no truncated inverse met the tolerance."""


class CertificationFailure(AlgebraError):
    """An inverse was computed but its residual is above tolerance.

    This points at numerical conditioning, never at a mathematical fact.
    """

    def __init__(self, message, residual=None):
        super().__init__(message)
        self.residual = residual


class Element:
    """Immutable element of a concrete algebra."""

    __slots__ = ("algebra", "data")

    def __init__(self, algebra: "Algebra", data):
        object.__setattr__(self, "algebra", algebra)
        object.__setattr__(self, "data", data)

    def __setattr__(self, name, value):
        raise AttributeError("Element is immutable")

    def _other(self, other) -> "Element":
        if isinstance(other, Element):
            if other.algebra is not self.algebra and other.algebra != self.algebra:
                raise DescriptorMismatch(f"{self.algebra!r} vs {other.algebra!r}")
            return other
        if isinstance(other, (int, float, complex, np.number)):
            return self.algebra.scalar(other)
        return NotImplemented

    def __add__(self, other):
        other = self._other(other)
        if other is NotImplemented:
            return other
        return Element(self.algebra, self.algebra._add(self.data, other.data))

    __radd__ = __add__

    def __sub__(self, other):
        other = self._other(other)
        if other is NotImplemented:
            return other
        return Element(self.algebra, self.algebra._sub(self.data, other.data))

    def __rsub__(self, other):
        return (-self) + other

    def __neg__(self):
        return Element(self.algebra, self.algebra._scale(self.data, -1.0))

    def __mul__(self, other):
        if isinstance(other, (int, float, complex, np.number)):
            return Element(self.algebra, self.algebra._scale(self.data, complex(other)))
        other = self._other(other)
        if other is NotImplemented:
            return other
        return Element(self.algebra, self.algebra._mul(self.data, other.data))

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative powers need invert()")
        out = self.algebra.one()
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def __eq__(self, other):
        if not isinstance(other, Element):
            return NotImplemented
        return self.algebra == other.algebra and self.algebra._equal(self.data, other.data)

    def __hash__(self):
        return hash((self.algebra, self.algebra._key(self.data)))

    def is_zero(self) -> bool:
        return self.algebra._is_zero(self.data)

    def norm(self) -> float:
        return self.algebra.norm(self)

    def __repr__(self):
        return f"Element({self.algebra.label()}, {self.algebra._format(self.data)})"


@dataclass(frozen=True)
class InvertCertificate:
    """An inverse together with the measured residual ``norm(x*inverse - 1)``."""

    inverse: Element
    residual: float


class Algebra:
    """Contract for a concrete commutative unital Banach algebra.

    Subclasses implement the raw-data hooks (``_add``, ``_mul``, ...) plus
    ``norm``, ``is_invertible``, ``invert``, ``random`` and ``sample_ball``.
    """

    kind: ClassVar[str] = "abstract"

    # raw data hooks
    def _add(self, a, b):
        raise NotImplementedError

    def _sub(self, a, b):
        return self._add(a, self._scale(b, -1.0))

    def _mul(self, a, b):
        raise NotImplementedError

    def _scale(self, a, c: complex):
        raise NotImplementedError

    def _equal(self, a, b) -> bool:
        raise NotImplementedError

    def _key(self, a):
        raise NotImplementedError

    def _is_zero(self, a) -> bool:
        raise NotImplementedError

    def _format(self, a) -> str:
        return repr(a)

    # element API
    def zero(self) -> Element:
        raise NotImplementedError

    def one(self) -> Element:
        raise NotImplementedError

    def scalar(self, c) -> Element:
        return Element(self, self._scale(self.one().data, complex(c)))

    def check(self, x: Element) -> Element:
        if not isinstance(x, Element):
            raise TypeError(f"expected Element, got {type(x).__name__}")
        if x.algebra is not self and x.algebra != self:
            raise DescriptorMismatch(f"{x.algebra.label()} is not {self.label()}")
        return x

    def norm(self, x: Element) -> float:
        raise NotImplementedError

    def distance(self, x: Element, y: Element) -> float:
        return self.norm(self.check(x) - self.check(y))

    def is_invertible(self, x: Element) -> bool:
        raise NotImplementedError

    def invert(self, x: Element, tol: float = INVERT_TOLERANCE) -> InvertCertificate:
        raise NotImplementedError

    def random(self, rng: np.random.Generator, scale: float = 1.0) -> Element:
        raise NotImplementedError

    def sample_ball(self, center: Element, radius: float, rng: np.random.Generator) -> Element:
        """Draw a point at distance strictly less than ``radius`` from ``center``."""
        raise NotImplementedError

    def label(self) -> str:
        return self.kind

    def certify(self, x: Element, inverse: Element) -> float:
        return self.norm(x * inverse - self.one())


def _disc(rng: np.random.Generator, size, radius: float) -> np.ndarray:
    """Uniform samples from the open complex disc of the given radius."""
    r = radius * np.sqrt(rng.uniform(0.0, 1.0, size))
    theta = rng.uniform(0.0, 2 * np.pi, size)
    return r * np.exp(1j * theta)


def _frozen(arr) -> np.ndarray:
    arr = np.array(arr, dtype=complex)
    arr.flags.writeable = False
    return arr


@dataclass(frozen=True)
class FiniteSpace(Algebra):
    """C(X) for a finite set X of ``n_pts`` points, i.e. C^n with the sup norm.

    ``FiniteSpace(1)`` is the complex field itself.
    """

    n_pts: int = 1
    kind: ClassVar[str] = "finite-space"

    def __post_init__(self):
        if self.n_pts < 1:
            raise ValueError("n_pts must be positive")

    def label(self):
        return "C" if self.n_pts == 1 else f"C^{self.n_pts}"

    def element(self, values) -> Element:
        values = np.atleast_1d(np.asarray(values, dtype=complex))
        if values.shape != (self.n_pts,):
            raise DescriptorMismatch(f"expected {self.n_pts} values, got shape {values.shape}")
        return Element(self, _frozen(values))

    def _add(self, a, b):
        return _frozen(a + b)

    def _sub(self, a, b):
        return _frozen(a - b)

    def _mul(self, a, b):
        return _frozen(a * b)

    def _scale(self, a, c):
        return _frozen(a * c)

    def _equal(self, a, b):
        return bool(np.array_equal(a, b))

    def _key(self, a):
        return a.tobytes()

    def _is_zero(self, a):
        return not np.any(a)

    def _format(self, a):
        return np.array2string(a, precision=6)

    def zero(self):
        return Element(self, _frozen(np.zeros(self.n_pts)))

    def one(self):
        return Element(self, _frozen(np.ones(self.n_pts)))

    def norm(self, x):
        return float(np.max(np.abs(self.check(x).data)))

    def _singular_slots(self, x: Element) -> np.ndarray:
        mod = np.abs(self.check(x).data)
        return np.flatnonzero(mod <= SINGULAR_THRESHOLD * mod.max())

    def is_invertible(self, x):
        return self._singular_slots(x).size == 0

    def invert(self, x, tol=INVERT_TOLERANCE):
        bad = self._singular_slots(x)
        if bad.size:
            raise NotInvertible(f"coordinate {int(bad[0])} vanishes", witness=int(bad[0]))
        inv = Element(self, _frozen(1.0 / x.data))
        residual = self.certify(x, inv)
        if residual >= tol:
            raise CertificationFailure(f"residual {residual:.3e} >= {tol:.1e}", residual)
        return InvertCertificate(inv, residual)

    def random(self, rng, scale=1.0):
        z = rng.standard_normal(self.n_pts) + 1j * rng.standard_normal(self.n_pts)
        return Element(self, _frozen(scale * z / np.sqrt(2)))

    def sample_ball(self, center, radius, rng):
        self.check(center)
        return Element(self, _frozen(center.data + _disc(rng, self.n_pts, radius)))


C = FiniteSpace(1)


@dataclass(frozen=True)
class FullnessVerdict:
    """Outcome of probing ``G(B) = B ∩ G(A)`` on a finite sample of B.

    ``witness`` is True when x is invertible in the ambient algebra but its
    inverse lies outside the span of the sample (within ``tol``).
    """

    ambient_invertible: bool
    witness: bool
    residual: float
    coefficients: tuple = ()

    @property
    def full_consistent(self) -> bool:
        return not self.witness


def is_full_subalgebra_witness(sub_elements: Sequence[Element], x: Element,
                               tol: float = 1e-8) -> FullnessVerdict:
    """Look for a refutation of fullness at ``x``.

    Only finite-space ambients are supported: the inverse of ``x`` is
    projected onto the linear span of ``sub_elements`` by least squares and
    the sup-norm residual of that projection is reported (relative to the
    inverse's norm).
    """
    alg = x.algebra
    if not isinstance(alg, FiniteSpace):
        raise TypeError("fullness probing needs a finite-space ambient algebra")
    for s in sub_elements:
        alg.check(s)
    try:
        inv = alg.invert(x).inverse
    except NotInvertible:
        return FullnessVerdict(ambient_invertible=False, witness=False, residual=float("nan"))
    basis = np.column_stack([np.asarray(s.data) for s in sub_elements])
    coef, *_ = np.linalg.lstsq(basis, np.asarray(inv.data), rcond=None)
    resid = np.max(np.abs(basis @ coef - inv.data)) / alg.norm(inv)
    return FullnessVerdict(
        ambient_invertible=True,
        witness=bool(resid >= tol),
        residual=float(resid),
        coefficients=tuple(complex(c) for c in coef),
    )


def as_element(algebra: Algebra, value: Any) -> Element:
    """Coerce scalars to multiples of the unit; pass elements through checked."""
    if isinstance(value, Element):
        return algebra.check(value)
    return algebra.scalar(value)
