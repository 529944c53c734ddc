import numpy as np
import pytest
from hypothesis import given, strategies as st

from denseinv.algebra import C, FiniteSpace, NotInvertible
from denseinv.extension import NormParameterError, dimension, make_extension, minimal_t, tower
from denseinv.instances import generic_criterion_instance, integer_criterion_instance
from denseinv.poly import MonicPoly

seeds = st.integers(0, 2**32 - 1)


def test_x_bar_is_its_own_inverse():
    E = make_extension(C, [-1.0, 0.0])
    xb = E.xbar()
    cert = E.invert(xb)
    assert cert.inverse == xb
    assert xb * xb == E.one()


def test_x_bar_not_invertible_when_alpha_has_root_zero():
    E = make_extension(C, [0.0, 1.0])       # x^2 + x
    with pytest.raises(NotInvertible) as exc:
        E.invert(E.xbar())
    assert abs(complex(exc.value.witness.data[0])) < 1e-15


def test_reduction_uses_alpha():
    E = make_extension(C, [-2.0, 0.0])      # x^2 = 2
    u = E.element([0.0, 0.0, 1.0])
    assert u == E.scalar(2.0)


def test_minimal_t_for_monomials_is_one():
    assert minimal_t(MonicPoly.from_lower(C, [0.0, 0.0])) == 1.0


def test_minimal_t_solves_the_norm_inequality():
    alpha = MonicPoly.from_lower(C, [4.0, 0.0])       # t^2 >= 4
    assert abs(minimal_t(alpha) - 2.0) < 1e-9


def test_too_small_t_rejected():
    with pytest.raises(NormParameterError):
        make_extension(C, [4.0, 0.0], t=1.5)


@given(seeds, st.integers(1, 4), st.integers(1, 3))
def test_norm_is_submultiplicative(seed, n, m):
    rng = np.random.default_rng(seed)
    A = FiniteSpace(m)
    E = make_extension(A, [A.random(rng, 2.0) for _ in range(n)])
    for _ in range(20):
        u, v = E.random(rng), E.random(rng)
        assert E.norm(u * v) <= E.norm(u) * E.norm(v) * (1 + 1e-10)


@given(seeds, st.integers(1, 3), st.integers(1, 4))
def test_integer_instances_agree_with_exact_verdict(seed, m, n):
    ext, u, invertible = integer_criterion_instance(m, n, np.random.default_rng(seed))
    assert ext.is_invertible(u) == invertible


@given(seeds, st.integers(1, 3), st.integers(1, 4))
def test_generic_inverse_is_certified(seed, m, n):
    ext, u, invertible = generic_criterion_instance(m, n, np.random.default_rng(seed))
    if invertible:
        cert = ext.invert(u)
        assert ext.distance(u * cert.inverse, ext.one()) < 1e-9
    else:
        with pytest.raises(NotInvertible):
            ext.invert(u)


def test_embedding_is_a_homomorphism():
    rng = np.random.default_rng(3)
    A = FiniteSpace(2)
    E = make_extension(A, [A.random(rng), A.random(rng)])
    a, b = A.random(rng), A.random(rng)
    assert E.distance(E.embed(a * b), E.embed(a) * E.embed(b)) < 1e-14
    assert E.norm(E.embed(a)) == pytest.approx(A.norm(a))


def test_tower_dimension_and_inversion():
    T = tower(C, [[-2.0, 0.0], lambda E: [-E.xbar(), E.zero()]])   # sqrt(2), then its square root
    assert dimension(T) == 4
    y = T.xbar()
    assert T.distance(y ** 4, T.scalar(2.0)) < 1e-12
    assert T.distance(y * T.invert(y).inverse, T.one()) < 1e-9
