"""Constructive density: perturbing elements into the invertible group.

The main entry point, :func:`perturb_to_invertible`, moves only the constant
coefficient ``b_0`` of an element of ``A_alpha``. It walks a chain of points
``c_{n-1} = b_0, c_{n-2}, ..., c_0, b~_0``, each within ``eps/n`` of the
previous one, such that the successive derivatives of
``P(c) = res(alpha, c + b_1 x + ...)`` are invertible at the next point.
Each point is found by rejection sampling in a ball of the base algebra.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Optional, Sequence

import numpy as np

from .algebra import (
    INVERT_TOLERANCE,
    Algebra,
    AlgebraError,
    DescriptorMismatch,
    Element,
    InvertCertificate,
    _disc,
)
from .extension import ArensHoffman, make_extension
from .linalg import det
from .poly import MonicPoly, formal_derivatives, resultant, resultant_poly_in_c

# keeps the telescoped displacement strictly under epsilon after rounding
_RADIUS_MARGIN = 1 - 1e-9


class StageExhausted(AlgebraError):
    def __init__(self, k: int, samples: int):
        super().__init__(f"stage {k}: no admissible point in {samples} samples")
        self.k = k
        self.samples = samples


class Exhausted(AlgebraError):
    pass


@dataclass(frozen=True)
class PerturbConfig:
    epsilon: float
    max_samples_per_stage: int = 200
    rng_seed: int = 0
    shrink_factor: float = 0.5
    shrink_every: int = 25
    tol: float = INVERT_TOLERANCE

    def __post_init__(self):
        if not self.epsilon > 0:
            raise ValueError("epsilon must be positive")
        if self.max_samples_per_stage < 1:
            raise ValueError("max_samples_per_stage must be >= 1")
        if not 0 < self.shrink_factor < 1:
            raise ValueError("shrink_factor must lie in (0, 1)")


def stage_rng(seed: int, trial: int, stage: int) -> np.random.Generator:
    """Independent stream for one (seed, trial, stage) triple."""
    return np.random.default_rng(np.random.SeedSequence([seed, trial, stage]))


@dataclass(frozen=True)
class Stage:
    k: int
    value: Element
    samples_used: int
    displacement: float


@dataclass(frozen=True)
class PerturbTrace:
    stages: tuple
    b0: Element
    achieved_distance: float
    certificate: InvertCertificate  # for the resultant, in the base algebra
    inverse: Optional[InvertCertificate] = field(default=None, compare=False)

    @property
    def samples_total(self) -> int:
        return sum(s.samples_used for s in self.stages)

    def to_json(self) -> dict:
        return {
            "stages": [{"k": s.k, "samples_used": s.samples_used, "displacement": s.displacement}
                       for s in self.stages],
            "achieved_distance": self.achieved_distance,
            "resultant_residual": self.certificate.residual,
        }


def search_ball(alg: Algebra, center: Element, radius: float, accept: Callable,
                rng: np.random.Generator, max_samples: int, shrink_factor: float = 0.5,
                shrink_every: int = 25):
    """Rejection-sample ``B(center, radius)`` until ``accept`` returns a truthy value.

    Returns ``(point, samples_used, accepted_value)`` or ``None``. The radius
    shrinks by ``shrink_factor`` after every ``shrink_every`` misses.
    """
    r = radius * _RADIUS_MARGIN
    for i in range(max_samples):
        if i and i % shrink_every == 0:
            r *= shrink_factor
        cand = alg.sample_ball(center, r, rng)
        if not alg.distance(cand, center) < radius:
            continue
        got = accept(cand)
        if got is not None and got is not False:
            return cand, i + 1, got
    return None


def _certify_or_none(alg: Algebra, x: Element, tol: float):
    try:
        return alg.invert(x, tol)
    except AlgebraError:
        return None


def perturb_to_invertible(u: Element, cfg: PerturbConfig, trial: int = 0) -> tuple[Element, PerturbTrace]:
    ext = u.algebra
    if not isinstance(ext, ArensHoffman):
        raise TypeError("perturb_to_invertible needs an element of an Arens-Hoffman extension")
    base, alpha, n = ext.base, ext.alpha, ext.n
    b0, tail = u.data[0], list(u.data[1:])
    step = cfg.epsilon / n
    stages = []
    c = b0
    if n >= 2:
        ders = formal_derivatives(resultant_poly_in_c(alpha, tail))
        for k in range(1, n):
            D = ders[n - k]
            found = search_ball(base, c, step, lambda v, D=D: base.is_invertible(D(v)),
                                stage_rng(cfg.rng_seed, trial, k), cfg.max_samples_per_stage,
                                cfg.shrink_factor, cfg.shrink_every)
            if found is None:
                raise StageExhausted(k, cfg.max_samples_per_stage)
            value, used, _ = found
            stages.append(Stage(k, value, used, base.distance(value, c)))
            c = value
    found = search_ball(base, c, step,
                        lambda v: _certify_or_none(base, resultant(alpha, [v] + tail), cfg.tol),
                        stage_rng(cfg.rng_seed, trial, n), cfg.max_samples_per_stage,
                        cfg.shrink_factor, cfg.shrink_every)
    if found is None:
        raise StageExhausted(n, cfg.max_samples_per_stage)
    b0_new, used, cert = found
    stages.append(Stage(n, b0_new, used, base.distance(b0_new, c)))
    u_new = ext.element([b0_new] + tail)
    inverse = ext.invert(u_new, cfg.tol)
    trace = PerturbTrace(tuple(stages), b0_new, ext.distance(u_new, u), cert, inverse)
    return u_new, trace


def perturb_in_base(a: Element, eps: float, rng: np.random.Generator, max_attempts: int = 200,
                    tol: float = INVERT_TOLERANCE) -> Element:
    """Invertible element within ``eps`` of ``a``, found by sampling plus certified inversion."""
    alg = a.algebra
    found = search_ball(alg, a, eps, lambda v: _certify_or_none(alg, v, tol), rng, max_attempts)
    if found is None:
        raise Exhausted(f"no invertible element found within {eps} after {max_attempts} draws")
    return found[0]


@dataclass(frozen=True)
class MatrixPerturbation:
    matrix: tuple
    shift: complex
    determinant: Element
    certificate: InvertCertificate
    samples_used: int


def matrix_perturb(B: Sequence[Sequence[Element]], eps: float, sigma: Sequence[int],
                   rng: np.random.Generator, max_samples: int = 200,
                   tol: float = INVERT_TOLERANCE) -> MatrixPerturbation:
    """Make ``B`` invertible by adding one scalar ``s`` at the entries ``(m, sigma[m])``.

    ``det(B + s P_sigma)`` is a degree-k polynomial in ``s`` with leading
    coefficient ``sign(sigma)``, so a small admissible ``s`` always exists.
    ``|s| < eps / k`` keeps the summed entry displacement below ``eps``.
    """
    k = len(B)
    if sorted(sigma) != list(range(k)):
        raise ValueError("sigma must be a permutation of range(k)")
    alg = B[0][0].algebra
    for row in B:
        if len(row) != k:
            raise ValueError("B must be square")
        for x in row:
            if x.algebra != alg:
                raise DescriptorMismatch("matrix entries over different algebras")
    r = (eps / k) * _RADIUS_MARGIN
    for i in range(max_samples):
        if i and i % 25 == 0:
            r *= 0.5
        s = complex(_disc(rng, 1, r)[0])
        if s == 0:
            continue
        M = [[B[m][j] + s if j == sigma[m] else B[m][j] for j in range(k)] for m in range(k)]
        d = det(M, alg)
        cert = _certify_or_none(alg, d, tol)
        if cert is not None:
            return MatrixPerturbation(tuple(tuple(row) for row in M), s, d, cert, i + 1)
    raise Exhausted(f"no admissible shift found in {max_samples} draws")


def nth_power_approximants(a: Element, alpha: MonicPoly, eps_sequence: Sequence[float],
                           seed: int = 0, t: Optional[float] = None,
                           max_samples_per_stage: int = 200) -> list[Element]:
    """Invertible base elements ``res(alpha, beta_eps)`` approaching ``a^n``.

    For each epsilon, ``a`` is embedded in ``A_alpha`` and perturbed into the
    invertible group; the resultant of the perturbed representative is
    invertible and tends to ``a^n`` as epsilon shrinks.
    """
    ext = make_extension(a.algebra, alpha, t)
    u = ext.embed(a)
    out = []
    for i, eps in enumerate(eps_sequence):
        cfg = PerturbConfig(epsilon=float(eps), rng_seed=seed,
                            max_samples_per_stage=max_samples_per_stage)
        u_new, _ = perturb_to_invertible(u, cfg, trial=i)
        out.append(ext.resultant_of(u_new))
    return out
