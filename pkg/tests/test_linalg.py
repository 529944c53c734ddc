import numpy as np
import pytest
from hypothesis import given, strategies as st

from denseinv.algebra import C, FiniteSpace
from denseinv.linalg import adjugate_column, berkowitz_charpoly, det


def _lift(A, M):
    return [[A.element(np.atleast_1d(v)) for v in row] for row in M]


@given(st.integers(0, 2**32 - 1), st.integers(1, 7))
def test_det_matches_lu(seed, N):
    rng = np.random.default_rng(seed)
    M = rng.standard_normal((N, N)) + 1j * rng.standard_normal((N, N))
    got = complex(det(_lift(C, M), C).data[0])
    ref = np.linalg.det(M)
    assert abs(got - ref) <= 1e-10 * max(1.0, abs(ref), np.linalg.norm(M) ** N)


@given(st.integers(0, 2**32 - 1), st.integers(1, 6))
def test_charpoly_matches_numpy(seed, N):
    rng = np.random.default_rng(seed)
    M = rng.standard_normal((N, N))
    cp = [complex(c.data[0]) for c in berkowitz_charpoly(_lift(C, M), C)]
    assert np.allclose(cp, np.poly(M), atol=1e-9 * (1 + np.linalg.norm(M)) ** N)


@given(st.integers(0, 2**32 - 1), st.integers(1, 6), st.integers(0, 5))
def test_adjugate_column_matches_inverse(seed, N, col):
    col = col % N
    rng = np.random.default_rng(seed)
    M = rng.standard_normal((N, N)) + 1j * rng.standard_normal((N, N))
    adj, d = adjugate_column(_lift(C, M), C, col)
    ref = np.linalg.det(M) * np.linalg.inv(M)[:, col]
    got = np.array([complex(a.data[0]) for a in adj])
    assert np.allclose(got, ref, atol=1e-9 * (1 + np.linalg.norm(M)) ** N)
    assert abs(complex(d.data[0]) - np.linalg.det(M)) <= 1e-9 * (1 + np.linalg.norm(M)) ** N


def test_det_is_coordinatewise_over_products():
    rng = np.random.default_rng(7)
    A = FiniteSpace(3)
    stack = rng.standard_normal((3, 4, 4))
    M = [[A.element(stack[:, i, j]) for j in range(4)] for i in range(4)]
    got = det(M, A).data
    assert np.allclose(got, [np.linalg.det(stack[k]) for k in range(3)], atol=1e-10)


def test_integer_matrix_is_exact():
    M = [[2, 0, 1], [1, 3, 2], [1, 1, 2]]
    assert complex(det(_lift(C, M), C).data[0]) == 6.0


def test_non_square_rejected():
    with pytest.raises(ValueError):
        det([[C.one(), C.one()]], C)
