import random
from fractions import Fraction

import pytest
from hypothesis import assume, given, strategies as st

from sylowkit.errors import NotPrime, ParityViolation, PreconditionError
from sylowkit.padic import (
    INFINITY, GaussianInt, check_valuation_parity, find_odd_witness, is_gaussian_prime,
    sample_rational_pair, two_square_representation, valuation_parity_certificate, vp,
)
from sylowkit.sylow import is_prime

PRIMES = [p for p in range(2, 60) if is_prime(p)]
rationals = st.builds(Fraction, st.integers(-10 ** 8, 10 ** 8), st.integers(1, 10 ** 4))


def test_vp_examples():
    assert vp(0, 3) is INFINITY
    assert vp(45, 3) == 2
    assert vp(Fraction(1, 2), 2) == -1
    with pytest.raises(NotPrime):
        vp(5, 4)


def test_infinity_marker():
    assert INFINITY > 10 ** 100 and not INFINITY < 0
    assert INFINITY + 3 is INFINITY and 3 + INFINITY is INFINITY
    assert str(INFINITY) == "+inf"


@given(rationals, rationals, st.sampled_from(PRIMES), st.integers(-3, 3), st.integers(-3, 3))
def test_ultrametric(x, y, p, i, j):
    x, y = x * Fraction(p) ** i, y * Fraction(p) ** j
    vx, vy, vs = vp(x, p), vp(y, p), vp(x + y, p)
    assert vp(x * y, p) == vx + vy
    assert vs >= min(vx, vy)
    if vx != vy:
        assert vs == min(vx, vy)


def test_gaussian_primes():
    assert is_gaussian_prime(3)
    assert not is_gaussian_prime(5)
    assert not is_gaussian_prime(2)
    assert two_square_representation(5) == (1, 2)
    assert two_square_representation(2) == (1, 1)
    # 2 = -i (1 + i)^2
    assert GaussianInt(0, -1) * GaussianInt(1, 1) * GaussianInt(1, 1) == GaussianInt(2)


@given(st.integers(-100, 100), st.integers(-100, 100), st.integers(-100, 100), st.integers(-100, 100))
def test_gaussian_arithmetic(a, b, c, d):
    z, w = GaussianInt(a, b), GaussianInt(c, d)
    assert (z * w).norm() == z.norm() * w.norm()
    assert (z * w).conjugate() == z.conjugate() * w.conjugate()
    if w.norm():
        assert (z * w).exact_div(w) == z


@pytest.mark.parametrize("a,b,p,v,parity", [
    (3, 6, 3, 2, "even"), (1, 2, 5, 1, "odd"), (Fraction(1, 3), Fraction(2, 3), 3, -2, "even"),
])
def test_parity_examples(a, b, p, v, parity):
    res = check_valuation_parity(a, b, p)
    assert res.valuation == v and res.parity == parity


def test_parity_rejects_zero_pair():
    with pytest.raises(PreconditionError):
        check_valuation_parity(0, 0, 7)


@given(rationals, rationals, st.sampled_from([3, 7, 11, 19, 23, 31, 43, 47]))
def test_parity_even_for_3_mod_4(a, b, p):
    assume(a or b)
    res = check_valuation_parity(a, b, p)
    assert res.parity == "even" and res.valuation == vp(a * a + b * b, p)


def test_parity_violation_is_internal():
    assert issubclass(ParityViolation, Exception)


def test_certificate_and_witness():
    cert = valuation_parity_certificate(7, samples=500, seed=1)
    assert cert.even_count == 500 and cert.max_strips >= 1 and cert.reduction_trace
    with pytest.raises(PreconditionError):
        valuation_parity_certificate(13)
    w = find_odd_witness(13, samples=500)
    assert w is not None and w.parity == "odd"
    assert vp(w.alpha ** 2 + w.beta ** 2, 13) % 2 == 1


def test_sampler_is_seeded():
    a = [sample_rational_pair(random.Random(5), 3) for _ in range(3)]
    b = [sample_rational_pair(random.Random(5), 3) for _ in range(3)]
    assert a == b
