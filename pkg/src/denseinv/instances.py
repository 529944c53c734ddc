"""Random test instances used by the experiment harness and the test-suite."""
from __future__ import annotations

import numpy as np

from .algebra import Element, FiniteSpace
from .beurling import AnnulusSpectrum, BeurlingAlgebra
from .extension import ArensHoffman, make_extension


def random_monic_lower(alg, n: int, rng: np.random.Generator, scale: float = 1.0) -> list:
    return [alg.random(rng, scale) for _ in range(n)]


def _int_poly_from_roots(roots) -> list[int]:
    """Ascending integer coefficients of prod (x - r)."""
    coeffs = [1]
    for r in roots:
        nxt = [0] * (len(coeffs) + 1)
        for j, c in enumerate(coeffs):
            nxt[j + 1] += c
            nxt[j] -= r * c
        coeffs = nxt
    return coeffs


def _int_eval(coeffs, x: int) -> int:
    acc = 0
    for c in reversed(coeffs):
        acc = acc * x + c
    return acc


def integer_criterion_instance(m: int, n: int, rng: np.random.Generator):
    """An element of ``(C^m)_alpha`` with small integer data and its exact verdict.

    Each coordinate gets ``alpha_i = prod (x - r_j)`` with integer roots and an
    integer ``beta_i``; about half the coordinates are forced to share a root
    with ``alpha_i``. Integer data keeps the division-free determinant exact,
    and the verdict is decided by exact integer evaluation ``beta_i(r_j) == 0``.

    Returns ``(ext, u, invertible)``.
    """
    alphas, betas = [], []
    invertible = True
    for _ in range(m):
        roots = [int(v) for v in rng.integers(-3, 4, n)]
        alpha = _int_poly_from_roots(roots)
        if n >= 2 and rng.uniform() < 0.5:
            shared = roots[int(rng.integers(0, n))]
            gamma = [int(v) for v in rng.integers(-3, 4, n - 1)]
            if not any(gamma):
                gamma[0] = 1
            beta = [0] * n
            for j, g in enumerate(gamma):  # (x - shared) * gamma
                beta[j + 1] += g
                beta[j] -= shared * g
        else:
            beta = [int(v) for v in rng.integers(-3, 4, n)]
            if n == 1 and rng.uniform() < 0.25:
                beta = [0]
        if any(_int_eval(beta, r) == 0 for r in roots):
            invertible = False
        alphas.append(alpha)
        betas.append(beta)
    A = FiniteSpace(m)
    lower = [A.element([alphas[i][j] for i in range(m)]) for j in range(n)]
    ext = make_extension(A, lower)
    u = ext.element([A.element([betas[i][j] for i in range(m)]) for j in range(n)])
    return ext, u, invertible


def generic_criterion_instance(m: int, n: int, rng: np.random.Generator):
    """Random complex instance; verdict from the roots of each coordinate's alpha."""
    A = FiniteSpace(m)
    ext = make_extension(A, random_monic_lower(A, n, rng))
    u = ext.random(rng, scale=ext.t ** (n - 1))
    invertible = True
    for i in range(m):
        a = [ext.alpha.base.coeffs[j].data[i] for j in range(n + 1)]
        b = [u.data[j].data[i] for j in range(n)]
        lam = np.roots(a[::-1])
        vals = np.polyval(b[::-1], lam)
        scale = max(1.0, max(abs(v) for v in b)) * max(1.0, float(np.max(np.abs(lam)))) ** n
        if np.min(np.abs(vals)) <= 1e-8 * scale:
            invertible = False
    return ext, u, invertible


def singular_element(ext: ArensHoffman, rng: np.random.Generator) -> Element:
    """An element of ``ext`` over ``C^m`` whose resultant vanishes in some coordinate.

    Built by choosing ``b_0`` so that the coset vanishes at one root of alpha
    in one coordinate: ``b_0 = -(b_1 lam + ... + b_{n-1} lam^{n-1})``.
    """
    A = ext.base
    u = ext.random(rng)
    m = A.n_pts
    i = int(rng.integers(0, m))
    a = [ext.alpha.base.coeffs[j].data[i] for j in range(ext.n + 1)]
    lam = np.roots(a[::-1])[int(rng.integers(0, ext.n))] if ext.n > 1 else -a[0]
    tail = sum(u.data[j].data[i] * lam ** j for j in range(1, ext.n))
    b0 = np.array(u.data[0].data)
    b0[i] = -tail
    return ext.element([A.element(b0)] + list(u.data[1:]))


def random_singular_matrix(A: FiniteSpace, k: int, rng: np.random.Generator) -> list[list[Element]]:
    """k x k matrix over ``C^m`` with the last row a combination of the others."""
    rows = [[A.random(rng) for _ in range(k)] for _ in range(k - 1)]
    lams = [A.random(rng) for _ in range(k - 1)]
    last = [sum((lams[i] * rows[i][j] for i in range(k - 1)), A.zero()) for j in range(k)]
    return rows + [last]


def _laurent_from_roots(B: BeurlingAlgebra, roots, lo: int, lead: complex) -> Element:
    c = lead * np.poly(np.asarray(roots, dtype=complex))[::-1] if len(roots) else np.array([lead])
    return B.element(c, lo)


def random_circle_laurent(B: BeurlingAlgebra, rng: np.random.Generator) -> Element:
    """Random Laurent element; half of them vanish somewhere on the unit circle."""
    deg = int(rng.integers(1, 5))
    roots = list(rng.standard_normal(deg) + 1j * rng.standard_normal(deg))
    if rng.uniform() < 0.5:
        roots[0] = np.exp(2j * np.pi * rng.uniform())
    lo = int(rng.integers(-2, 3))
    lead = complex(rng.standard_normal() + 1j * rng.standard_normal())
    return _laurent_from_roots(B, roots, lo, lead)


def obstructed_laurent(B: BeurlingAlgebra, rng: np.random.Generator) -> Element:
    """Laurent element with one or two zeros strictly inside the annulus of ``B``."""
    s: AnnulusSpectrum = B.spectrum
    if s.is_circle:
        raise ValueError("a circle carries no obstructed elements")
    gap = s.rho_plus - s.rho_minus
    roots = []
    for _ in range(int(rng.integers(1, 3))):
        r = rng.uniform(s.rho_minus + 0.2 * gap, s.rho_plus - 0.2 * gap)
        roots.append(r * np.exp(2j * np.pi * rng.uniform()))
    for _ in range(int(rng.integers(0, 3))):
        if rng.uniform() < 0.5:
            r = rng.uniform(0.1, 0.6) * s.rho_minus
        else:
            r = rng.uniform(1.6, 3.0) * s.rho_plus
        roots.append(r * np.exp(2j * np.pi * rng.uniform()))
    lo = int(rng.integers(-2, 3))
    lead = complex(np.exp(2j * np.pi * rng.uniform()) * rng.uniform(0.5, 2.0))
    return _laurent_from_roots(B, roots, lo, lead)
