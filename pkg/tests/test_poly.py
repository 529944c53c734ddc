import math

import numpy as np
import pytest
from hypothesis import given, strategies as st

from denseinv.algebra import C, FiniteSpace
from denseinv.poly import (
    AlgebraPoly,
    MonicPoly,
    divide_by_monic,
    formal_derivatives,
    multiplication_matrix,
    reduce_mod,
    resultant,
    resultant_poly_in_c,
    resultant_via_multiplication_matrix,
    sylvester_matrix,
)

seeds = st.integers(0, 2**32 - 1)


def _scalar(x):
    return complex(x.data[0])


def _roots_oracle(a, b):
    """prod beta(lambda_i) over the numerical roots of the monic alpha with lower coeffs a."""
    lam = np.roots(np.r_[1.0, np.asarray(a)[::-1]])
    return complex(np.prod(np.polyval(np.asarray(b)[::-1], lam)))


def test_monic_validation():
    with pytest.raises(ValueError):
        MonicPoly(AlgebraPoly(C, (1.0,)))
    with pytest.raises(ValueError):
        MonicPoly(AlgebraPoly(C, (1.0, 2.0)))
    alpha = MonicPoly.from_lower(C, [3.0, 0.0])
    assert alpha.n == 2 and len(alpha.lower) == 2


def test_sylvester_layout():
    alpha = MonicPoly.from_lower(C, [5.0, 7.0])  # x^2 + 7x + 5
    S = sylvester_matrix(alpha, [2.0, 3.0])      # 3x + 2
    rows = [[_scalar(e) for e in r] for r in S]
    assert rows == [[1, 7, 5], [3, 2, 0], [0, 3, 2]]


@given(seeds, st.integers(1, 5))
def test_resultant_matches_root_product(seed, n):
    rng = np.random.default_rng(seed)
    a = rng.standard_normal(n) + 1j * rng.standard_normal(n)
    b = rng.standard_normal(n) + 1j * rng.standard_normal(n)
    got = _scalar(resultant(MonicPoly.from_lower(C, list(a)), list(b)))
    ref = _roots_oracle(a, b)
    assert abs(got - ref) <= 1e-8 * max(1.0, abs(ref))


@given(seeds, st.integers(1, 5), st.integers(1, 3))
def test_resultant_equals_multiplication_determinant(seed, n, m):
    rng = np.random.default_rng(seed)
    A = FiniteSpace(m)
    alpha = MonicPoly.from_lower(A, [A.random(rng) for _ in range(n)])
    beta = [A.random(rng) for _ in range(n)]
    r1, r2 = resultant(alpha, beta), resultant_via_multiplication_matrix(alpha, beta)
    assert A.distance(r1, r2) <= 1e-9 * max(1.0, A.norm(r1))


@given(seeds, st.integers(1, 4))
def test_resultant_is_coordinatewise(seed, n):
    rng = np.random.default_rng(seed)
    A = FiniteSpace(3)
    lower = [A.random(rng) for _ in range(n)]
    beta = [A.random(rng) for _ in range(n)]
    whole = resultant(MonicPoly.from_lower(A, lower), beta)
    for i in range(3):
        one = resultant(MonicPoly.from_lower(C, [x.data[i] for x in lower]), [x.data[i] for x in beta])
        assert abs(whole.data[i] - _scalar(one)) <= 1e-12 * max(1.0, abs(whole.data[i]))


@given(seeds, st.integers(1, 3))
def test_square_root_identity(seed, m):
    rng = np.random.default_rng(seed)
    A = FiniteSpace(m)
    a0, b0, b1 = (A.random(rng) for _ in range(3))
    r = resultant(MonicPoly.from_lower(A, [-a0, A.zero()]), [b0, b1])
    closed = b0 * b0 - a0 * b1 * b1
    assert A.distance(r, closed) <= 1e-12 * max(1.0, A.norm(closed))


@given(seeds, st.integers(1, 4))
def test_homogeneous_in_beta(seed, n):
    rng = np.random.default_rng(seed)
    a = list(rng.standard_normal(n) + 1j * rng.standard_normal(n))
    b = list(rng.standard_normal(n) + 1j * rng.standard_normal(n))
    lam = complex(rng.standard_normal(), rng.standard_normal())
    alpha = MonicPoly.from_lower(C, a)
    lhs = _scalar(resultant(alpha, [lam * v for v in b]))
    rhs = lam ** n * _scalar(resultant(alpha, b))
    assert abs(lhs - rhs) <= 1e-9 * max(1.0, abs(rhs))


def test_resultant_of_shared_root_vanishes():
    alpha = MonicPoly.from_lower(C, [2.0, -3.0])      # (x-1)(x-2)
    assert abs(_scalar(resultant(alpha, [-1.0, 1.0]))) < 1e-14


def test_beta_degree_is_checked():
    alpha = MonicPoly.from_lower(C, [1.0])
    with pytest.raises(ValueError):
        resultant(alpha, [1.0, 2.0])


@given(seeds, st.integers(1, 5))
def test_division_reconstructs(seed, n):
    rng = np.random.default_rng(seed)
    A = FiniteSpace(2)
    alpha = MonicPoly.from_lower(A, [A.random(rng) for _ in range(n)])
    f = AlgebraPoly(A, tuple(A.random(rng) for _ in range(n + 3)))
    q, r = divide_by_monic(f, alpha)
    assert len(r.coeffs) <= n
    back = q * alpha.base + r
    for j in range(n + 3):
        assert A.distance(back.coeff(j), f.coeff(j)) <= 1e-10 * (1 + A.norm(f.coeff(j)))
    assert len(reduce_mod(f, alpha)) == n


def test_multiplication_matrix_columns():
    alpha = MonicPoly.from_lower(C, [-1.0, 0.0])      # x^2 = 1
    M = multiplication_matrix(alpha, [0.0, 1.0])       # multiply by x
    assert [[_scalar(e) for e in r] for r in M] == [[0, 1], [1, 0]]


@given(seeds, st.integers(1, 4), st.integers(1, 2))
def test_resultant_polynomial_matches_direct_evaluation(seed, n, m):
    rng = np.random.default_rng(seed)
    A = FiniteSpace(m)
    alpha = MonicPoly.from_lower(A, [A.random(rng) for _ in range(n)])
    tail = [A.random(rng) for _ in range(n - 1)]
    P = resultant_poly_in_c(alpha, tail)
    for _ in range(3):
        c = A.random(rng)
        direct = resultant(alpha, [c] + tail)
        assert A.distance(P(c), direct) <= 1e-9 * max(1.0, A.norm(direct))


def test_resultant_polynomial_of_pure_power():
    P = resultant_poly_in_c(MonicPoly.from_lower(C, [0.0, 0.0, 0.0]), [0.0, 0.0])
    # res(x^3, c) = c^3
    assert all(abs(_scalar(p)) < 1e-12 for p in P.coeffs)


@given(seeds, st.integers(2, 4))
def test_top_derivative_is_affine(seed, n):
    rng = np.random.default_rng(seed)
    A = FiniteSpace(2)
    alpha = MonicPoly.from_lower(A, [A.random(rng) for _ in range(n)])
    P = resultant_poly_in_c(alpha, [A.random(rng) for _ in range(n - 1)])
    top = formal_derivatives(P)[n - 1]
    c = A.random(rng)
    want = c * float(math.factorial(n)) + P.coeffs[n - 1] * float(math.factorial(n - 1))
    assert A.distance(top(c), want) <= 1e-9 * max(1.0, A.norm(want))


def test_top_derivative_without_subleading_term():
    # x^2 - a0 with beta = c + b1 x gives P(c) = c^2 - a0 b1^2, so P' = 2c
    P = resultant_poly_in_c(MonicPoly.from_lower(C, [-3.0, 0.0]), [2.0])
    assert abs(_scalar(P.coeffs[1])) < 1e-12
    d = formal_derivatives(P)[1]
    assert abs(_scalar(d(C.scalar(0.7))) - 1.4) < 1e-12


@given(seeds, st.integers(1, 4))
def test_derivatives_match_finite_differences(seed, n):
    rng = np.random.default_rng(seed)
    alpha = MonicPoly.from_lower(C, list(rng.standard_normal(n)))
    P = resultant_poly_in_c(alpha, list(rng.standard_normal(n - 1)))
    ders = formal_derivatives(P)
    assert len(ders) == n
    c, h = complex(rng.standard_normal()), 1e-6
    for k in range(n - 1):
        fd = (_scalar(ders[k](c + h)) - _scalar(ders[k](c - h))) / (2 * h)
        assert abs(fd - _scalar(ders[k + 1](c))) <= 1e-5 * max(1.0, abs(fd))
