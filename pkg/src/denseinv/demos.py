"""Worked examples printed with their intermediate values."""
from __future__ import annotations

import numpy as np

from .algebra import C, FiniteSpace, is_full_subalgebra_witness
from .beurling import BeurlingAlgebra, WeightSequence, gelfand_roots, obstruction_verdict
from .experiments import rational_circle_basis
from .extension import make_extension
from .perturb import PerturbConfig, perturb_to_invertible
from .poly import MonicPoly, multiplication_matrix, resultant, sylvester_matrix


def _fmt_matrix(M) -> str:
    return "\n".join("    [" + ", ".join(e.algebra._format(e.data) for e in row) + "]" for row in M)


def square_root_resultant(seed: int = 0) -> str:
    rng = np.random.default_rng(seed)
    lines = ["alpha(x) = x^2 - a0, beta(x) = b0 + b1 x;  res(alpha, beta) vs b0^2 - a0 b1^2"]
    for A in (C, FiniteSpace(3)):
        a0, b0, b1 = (A.random(rng) for _ in range(3))
        alpha = MonicPoly.from_lower(A, [-a0, A.zero()])
        S = sylvester_matrix(alpha, [b0, b1])
        r = resultant(alpha, [b0, b1])
        closed = b0 * b0 - a0 * b1 * b1
        lines += [f"over {A.label()}:", "  Sylvester matrix:", _fmt_matrix(S),
                  f"  determinant       = {r.algebra._format(r.data)}",
                  f"  b0^2 - a0 b1^2    = {closed.algebra._format(closed.data)}",
                  f"  sup-norm gap      = {A.distance(r, closed):.3e}"]
    return "\n".join(lines)


def rational_non_fullness(seed: int = 0) -> str:
    rng = np.random.default_rng(seed)
    A, basis, x = rational_circle_basis(rng)
    v = is_full_subalgebra_witness(basis, x, tol=1e-6)
    return "\n".join([
        "B = rational functions with poles off S^1 and off 2, sampled at 64 points of S^1",
        f"sample of B: z^-3..z^3 plus {len(basis) - 7} functions 1/(z - p)",
        "x = z - 2 restricted to S^1",
        f"x invertible in C(S^1) (sampled): {v.ambient_invertible}",
        f"relative residual of 1/(z-2) against span(sample): {v.residual:.3e}",
        f"non-fullness witness reported: {v.witness}",
        "1/(z - 2) has its pole at 2, so it is not in B although z - 2 is invertible in C(S^1).",
    ])


def x_bar_inverse(seed: int = 0) -> str:
    E = make_extension(C, [-1.0, 0.0])
    xb = E.xbar()
    r = E.resultant_of(xb)
    cert = E.invert(xb)
    M = multiplication_matrix(E.alpha, list(xb.data))
    return "\n".join([
        f"A = C[x]/(x^2 - 1), Arens-Hoffman parameter t = {E.t}",
        "multiplication-by-xbar matrix:", _fmt_matrix(M),
        f"res(x^2 - 1, x) = {r.algebra._format(r.data)}  (invertible in C)",
        f"xbar^-1 = {E._format(cert.inverse.data)}",
        f"xbar * xbar = {E._format((xb * xb).data)}",
        f"certificate residual = {cert.residual:.3e}",
    ])


def perturbation_trace(seed: int = 0) -> str:
    A = FiniteSpace(2)
    E = make_extension(A, [A.element([-1, -1]), A.zero()])
    u = E.element([A.one(), A.one()])
    u_new, trace = perturb_to_invertible(u, PerturbConfig(epsilon=0.1, rng_seed=seed))
    lines = [f"A = C^2, alpha = x^2 - (1,1), u = 1 + xbar, t = {E.t}",
             f"res(alpha, u) = {E.resultant_of(u).algebra._format(E.resultant_of(u).data)}  (not invertible)"]
    for s in trace.stages:
        lines.append(f"  stage {s.k}: point {A._format(s.value.data)}  samples={s.samples_used}"
                     f"  step={s.displacement:.4g}")
    r = E.resultant_of(u_new)
    lines += [f"perturbed b0 = {A._format(trace.b0.data)}",
              f"res(alpha, u~) = {A._format(r.data)}",
              f"||u~ - u|| = {trace.achieved_distance:.4g} < 0.1"]
    return "\n".join(lines)


def beurling_annulus(seed: int = 0) -> str:
    B = BeurlingAlgebra(WeightSequence("one_sided", 2.0))
    x = B.delta(1) - 1.5 * B.delta(0)
    info = gelfand_roots(x)
    v = obstruction_verdict(x)
    return "\n".join([
        "l1(Z, w) with w_k = 2^k (k >= 0), 1 (k < 0): character space 1 <= |w| <= 2",
        f"x = {B._format(x.data)}, roots {np.round(info.roots, 6).tolist()}",
        f"invertible: {info.invertible}",
        f"windings on |w|=1 and |w|=2: {v.windings} -> {v.verdict.value}",
        f"no element within {v.stability_radius:.4g} of x is invertible",
    ])


DEMOS = {
    "square-root-resultant": square_root_resultant,
    "example-1-2": rational_non_fullness,
    "x-bar-inverse": x_bar_inverse,
    "perturbation-trace": perturbation_trace,
    "beurling-annulus": beurling_annulus,
}


def demo(name: str, seed: int = 0) -> str:
    try:
        fn = DEMOS[name]
    except KeyError:
        raise KeyError(f"unknown demo {name!r}; choose from {sorted(DEMOS)}") from None
    return fn(seed)
