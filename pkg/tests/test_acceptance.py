"""Acceptance criteria, one test each. Every test records a PASS/FAIL line.

Run alone with ``pytest tests/test_acceptance.py -v``; the lines are printed
in the terminal summary (and immediately with ``-s``).
"""
import json
import math
import time

import numpy as np
import pytest

from denseinv.algebra import AlgebraError, C, FiniteSpace, NotInvertible
from denseinv.beurling import (
    BeurlingAlgebra,
    DiscClosure,
    WeightSequence,
    disc_closure_membership,
    obstruction_verdict,
    winding_pair,
)
from denseinv.experiments import ExperimentConfig, fitted_slope, run
from denseinv.extension import make_extension
from denseinv.instances import (
    generic_criterion_instance,
    integer_criterion_instance,
    obstructed_laurent,
    random_circle_laurent,
    random_singular_matrix,
    singular_element,
)
from denseinv.perturb import (
    Exhausted,
    PerturbConfig,
    matrix_perturb,
    nth_power_approximants,
    perturb_in_base,
    perturb_to_invertible,
)
from denseinv.poly import MonicPoly, resultant

RESULTS = []


def report(n, title, ok, detail):
    line = f"{'PASS' if ok else 'FAIL'}  criterion {n:>2}: {title} | {detail}"
    RESULTS.append(line)
    print(line)
    assert ok, line


def _crandn(rng, n):
    return rng.standard_normal(n) + 1j * rng.standard_normal(n)


def test_criterion_01_resultant_matches_root_product():
    rng = np.random.default_rng(101)
    worst, start = 0.0, time.perf_counter()
    for _ in range(500):
        n = int(rng.integers(1, 6))
        a, b = _crandn(rng, n), _crandn(rng, n)
        got = complex(resultant(MonicPoly.from_lower(C, list(a)), list(b)).data[0])
        lam = np.roots(np.r_[1.0, a[::-1]])
        ref = complex(np.prod(np.polyval(b[::-1], lam)))
        worst = max(worst, abs(got - ref) / abs(ref))
    elapsed = time.perf_counter() - start
    report(1, "resultant vs prod beta(lambda_i), 500 instances, n<=5", worst <= 1e-7 and elapsed < 5,
           f"max relative error {worst:.2e} (limit 1e-7), {elapsed:.2f}s (limit 5s)")


def test_criterion_02_invertibility_criterion():
    rng = np.random.default_rng(102)
    agree = invertible = 0
    for i in range(1000):
        m, n = int(rng.integers(1, 4)), int(rng.integers(1, 5))
        make = integer_criterion_instance if i % 2 == 0 else generic_criterion_instance
        ext, u, expected = make(m, n, rng)
        try:
            ext.invert(u)
            got = True
        except NotInvertible:
            got = False
        agree += got == expected
        invertible += expected
    report(2, "extension inverse verdict vs coordinatewise oracle, 1000 instances", agree == 1000,
           f"{agree}/1000 agree ({invertible} invertible, {1000 - invertible} singular)")


def test_criterion_03_square_root_identity():
    rng = np.random.default_rng(103)
    worst = 0.0
    for A in (C, FiniteSpace(3)):
        for _ in range(200):
            a0, b0, b1 = (A.random(rng) for _ in range(3))
            r = resultant(MonicPoly.from_lower(A, [-a0, A.zero()]), [b0, b1])
            closed = b0 * b0 - a0 * b1 * b1
            worst = max(worst, A.distance(r, closed) / A.norm(closed))
    report(3, "res(x^2 - a0, b0 + b1 x) = b0^2 - a0 b1^2 over C and C^3, 200 each", worst <= 1e-12,
           f"max relative gap {worst:.2e} (limit 1e-12)")


def test_criterion_04_homogeneity():
    rng = np.random.default_rng(104)
    worst = 0.0
    for _ in range(200):
        n = int(rng.integers(1, 5))
        alpha = MonicPoly.from_lower(C, list(_crandn(rng, n)))
        b = list(_crandn(rng, n))
        lam = complex(*rng.standard_normal(2))
        lhs = complex(resultant(alpha, [lam * v for v in b]).data[0])
        rhs = lam ** n * complex(resultant(alpha, b).data[0])
        worst = max(worst, abs(lhs - rhs) / abs(rhs))
    report(4, "res(alpha, lambda beta) = lambda^n res(alpha, beta), 200 instances, n<=4", worst <= 1e-9,
           f"max relative gap {worst:.2e} (limit 1e-9)")


def test_criterion_05_perturbation_engine():
    eps, trials = 1e-2, 1000
    successes = violations = 0
    start = time.perf_counter()
    for trial in range(trials):
        rng = np.random.default_rng([105, trial])
        A = FiniteSpace(int(rng.integers(1, 4)))
        n = int(rng.integers(1, 5))
        ext = make_extension(A, [A.random(rng) for _ in range(n)])
        u = singular_element(ext, rng) if trial % 2 == 0 else ext.random(rng)
        try:
            u_new, trace = perturb_to_invertible(u, PerturbConfig(epsilon=eps, rng_seed=105), trial)
        except AlgebraError:
            continue
        successes += 1
        ok = (ext.distance(u_new, u) < eps
              and all(x == y for x, y in zip(u_new.data[1:], u.data[1:]))
              and trace.certificate.residual < 1e-9
              and A.distance(trace.certificate.inverse * ext.resultant_of(u_new), A.one()) < 1e-9)
        violations += not ok
    elapsed = time.perf_counter() - start
    rate = successes / trials
    report(5, "perturbation to invertible over C^m (m<=3, n<=4), 1000 trials, eps=1e-2",
           rate >= 0.99 and violations == 0 and elapsed < 60,
           f"success rate {rate:.3f} (limit 0.99), {violations} contract violations, {elapsed:.1f}s (limit 60s)")


def test_criterion_06_power_approximants_converge_linearly():
    eps = [2.0 ** -k for k in range(3, 11)]
    slopes = {}
    for n in (2, 3):
        alpha = MonicPoly.from_lower(C, [0.0] * n)
        for label, a in (("0", 0.0), ("2", 2.0), ("i", 1j)):
            target = C.scalar(a) ** n
            xs, ds = [], []
            for seed in range(8):
                vals = nth_power_approximants(C.scalar(a), alpha, eps, seed=seed)
                assert all(C.is_invertible(v) for v in vals)
                xs += eps
                ds += [C.distance(v, target) for v in vals]
            slopes[f"x^{n},a={label}"] = fitted_slope(xs, ds)
    worst = min(slopes.values())
    report(6, "distance(approximant, a^n) vs eps log-log slope, eps=2^-3..2^-10", worst >= 0.9,
           "min slope %.3f (limit 0.9): %s" % (worst, ", ".join(f"{k} {v:.2f}" for k, v in slopes.items())))


def test_criterion_07_matrix_perturbation():
    eps, k = 1e-2, 3
    rng = np.random.default_rng(107)
    ok = total = 0
    for A in (C, FiniteSpace(2)):
        for _ in range(200):
            B = random_singular_matrix(A, k, rng)
            sigma = [int(v) for v in rng.permutation(k)]
            total += 1
            try:
                res = matrix_perturb(B, eps, sigma, rng)
            except Exhausted:
                continue
            moved = sum(A.distance(res.matrix[m][sigma[m]], B[m][sigma[m]]) for m in range(k))
            untouched = all(res.matrix[i][j] is B[i][j] for i in range(k) for j in range(k) if j != sigma[i])
            ok += untouched and moved <= eps and res.certificate.residual < 1e-9
    report(7, "singular 3x3 matrices over C and C^2 made invertible on a permutation", ok == total,
           f"{ok}/{total} certified, untouched off-permutation, displacement <= {eps}")


def test_criterion_08_circle_versus_annulus():
    rng = np.random.default_rng(108)
    circle = BeurlingAlgebra(WeightSequence("constant"))
    perturbed = 0
    for _ in range(500):
        x = random_circle_laurent(circle, rng)
        try:
            y = perturb_in_base(x, 0.05, rng)
        except Exhausted:
            continue
        perturbed += circle.distance(x, y) < 0.05 and circle.invert(y).residual < 1e-9
    annulus = BeurlingAlgebra(WeightSequence("one_sided", 2.0))
    stable = 0
    for _ in range(100):
        x = obstructed_laurent(annulus, rng)
        v = obstruction_verdict(x)
        same = v.obstructed
        for _ in range(100):
            y = annulus.sample_ball(x, v.stability_radius, rng)
            same = same and winding_pair(y) == v.windings and not annulus.is_invertible(y)
        stable += same
    report(8, "constant weight perturbable; one-sided 2^k obstructed windings stable",
           perturbed == 500 and stable == 100,
           f"circle {perturbed}/500 perturbed at eps=0.05; annulus {stable}/100 obstructed elements keep "
           f"their windings under 100 perturbations inside the stability radius")


def test_criterion_09_disc_algebra_closure():
    got = [disc_closure_membership(c) for c in ([-2, 1], [-1, 1], [0, 1])]
    want = [DiscClosure.IN_CLOSURE, DiscClosure.IN_CLOSURE, DiscClosure.NOT_IN_CLOSURE]
    report(9, "closure verdicts for z-2, z-1, z", got == want, ", ".join(v.value for v in got))


def test_criterion_10_auto_t_is_submultiplicative():
    rng = np.random.default_rng(110)
    violations, worst = 0, -math.inf
    for _ in range(100):
        A = FiniteSpace(int(rng.integers(1, 4)))
        n = int(rng.integers(1, 5))
        E = make_extension(A, [A.random(rng, float(rng.uniform(0.1, 5.0))) for _ in range(n)])
        for _ in range(1000):
            u, v = E.random(rng), E.random(rng)
            ratio = E.norm(u * v) / (E.norm(u) * E.norm(v))
            worst = max(worst, ratio)
            violations += ratio > 1 + 1e-10
    report(10, "||uv|| <= ||u|| ||v|| with automatic t, 100 extensions x 1000 pairs", violations == 0,
           f"{violations} violations, max ||uv||/(||u|| ||v||) = {worst:.4f}")


def test_criterion_11_deterministic_csv(tmp_path):
    same = []
    for kind in ("thm21-density", "beurling-dichotomy", "matrix-remark"):
        cfg = {"kind": kind, "trials": 40, "seed": 111, "perturbation_samples": 20}
        for d in ("a", "b"):
            (tmp_path / f"{d}.json").write_text(json.dumps(cfg))
            run(ExperimentConfig.from_json(json.loads((tmp_path / f"{d}.json").read_text())), tmp_path / d)
        same.append((tmp_path / "a" / f"{kind}.csv").read_bytes() == (tmp_path / "b" / f"{kind}.csv").read_bytes())
    report(11, "same config and seed give byte-identical CSV", all(same),
           f"{sum(same)}/{len(same)} experiment kinds identical")


if __name__ == "__main__":
    raise SystemExit(pytest.main([__file__, "-q", "-s"]))
