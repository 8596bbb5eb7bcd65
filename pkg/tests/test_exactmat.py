import random
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from sylowkit.errors import NotInvolution, NotUnimodular, PreconditionError, SingularMatrix
from sylowkit.exactmat import (
    COMPANIONS, IDENTITY, MINUS_IDENTITY, RationalMat2, involution_classify, mat_det, mat_inv,
    matrix_order, random_finite_order_sample, random_sl2q, random_unimodular_integer,
)

rationals = st.builds(Fraction, st.integers(-10 ** 4, 10 ** 4), st.integers(1, 50))
matrices = st.builds(RationalMat2, rationals, rationals, rationals, rationals)
invertible = matrices.filter(lambda M: M.det() != 0)


def test_determinant_examples():
    assert IDENTITY.det() == 1
    assert RationalMat2(0, -7, Fraction(1, 7), 0).det() == 1


def test_inverse_example():
    assert mat_inv(RationalMat2(0, 1, -1, 0)) == RationalMat2(0, -1, 1, 0)
    with pytest.raises(SingularMatrix):
        mat_inv(RationalMat2(1, 2, 2, 4))


def test_parse_and_str():
    M = RationalMat2.parse("[0 -3; 1/3 0]")
    assert M == RationalMat2(0, -3, Fraction(1, 3), 0)
    assert str(M) == "[0 -3; 1/3 0]"
    assert RationalMat2.parse(str(M)) == M
    with pytest.raises(PreconditionError):
        RationalMat2.parse("[1 2 3]")


def test_matrix_order_examples():
    assert matrix_order(IDENTITY) == 1
    assert matrix_order(RationalMat2(0, 1, -1, 0)) == 4
    assert matrix_order(RationalMat2(1, 1, 0, 1), bound=100) is None
    with pytest.raises(NotUnimodular):
        matrix_order(RationalMat2(0, 1, 1, 0))


def test_companion_orders():
    for k, M in COMPANIONS.items():
        assert matrix_order(M) == k


def test_involution_classify():
    assert involution_classify(IDENTITY) == "identity"
    assert involution_classify(MINUS_IDENTITY) == "central involution"
    with pytest.raises(NotUnimodular):
        involution_classify(RationalMat2(0, 1, 1, 0))
    with pytest.raises(NotInvolution):
        involution_classify(RationalMat2(0, 1, -1, 0))


@given(matrices, matrices, matrices)
def test_ring_identities(A, B, C):
    assert (A * B) * C == A * (B * C)
    assert A * (B + C) == A * B + A * C
    assert mat_det(A * B) == mat_det(A) * mat_det(B)


@given(invertible)
def test_inverse_identity(A):
    assert A * mat_inv(A) == IDENTITY == mat_inv(A) * A
    assert A ** -2 == mat_inv(A * A)


@given(st.integers(0, 2 ** 32))
def test_random_unimodular(seed):
    rng = random.Random(seed)
    assert random_unimodular_integer(rng).det() == 1
    assert random_sl2q(rng).det() == 1


@given(st.integers(0, 2 ** 32), st.integers(1, 30))
def test_order_divides_exponent(seed, m):
    M, k = random_finite_order_sample(random.Random(seed))
    assert matrix_order(M) == k
    assert (M ** m == IDENTITY) == (m % k == 0)
