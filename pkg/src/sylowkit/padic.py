"""p-adic valuations of rationals and the Gaussian-integer parity argument.

For p ≡ 3 (mod 4), p stays prime in Z[i], so p | u² + w² = (u + wi)(u - wi)
forces p | u and p | w. Stripping p from both coordinates removes exactly p²
from the sum, which is why v_p(α² + β²) is always even for such p.
"""
from __future__ import annotations

import math
import random
from dataclasses import dataclass, field, asdict
from fractions import Fraction
from functools import total_ordering
from typing import Optional, Union

from .errors import InternalInconsistency, NotPrime, ParityViolation, PreconditionError
from .sylow import is_prime

CONSTRUCTIVE_LIMIT = 10 ** 4


@total_ordering
class _Infinity:
    """+∞ valuation marker; larger than every integer and absorbing under addition."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "INFINITY"

    def __str__(self):
        return "+inf"

    def __eq__(self, other):
        return other is self

    def __hash__(self):
        return hash("sylowkit.INFINITY")

    def __lt__(self, other):
        return False

    def __gt__(self, other):
        return other is not self

    def __add__(self, other):
        if isinstance(other, int) or other is self:
            return self
        return NotImplemented

    __radd__ = __add__


INFINITY = _Infinity()
Valuation = Union[int, _Infinity]


def _require_prime(p: int) -> None:
    if not is_prime(p):
        raise NotPrime(f"{p} is not prime")


def vp_int(n: int, p: int) -> Valuation:
    if n == 0:
        return INFINITY
    n, k = abs(n), 0
    while n % p == 0:
        n //= p
        k += 1
    return k


def vp(x, p: int) -> Valuation:
    """v_p of a rational: v_p(numerator) - v_p(denominator); v_p(0) is INFINITY."""
    _require_prime(p)
    x = Fraction(x)
    if x == 0:
        return INFINITY
    return vp_int(x.numerator, p) - vp_int(x.denominator, p)


@dataclass(frozen=True)
class GaussianInt:
    real: int
    imag: int = 0

    def __add__(self, other):
        return GaussianInt(self.real + other.real, self.imag + other.imag)

    def __sub__(self, other):
        return GaussianInt(self.real - other.real, self.imag - other.imag)

    def __mul__(self, other):
        if isinstance(other, int):
            other = GaussianInt(other)
        return GaussianInt(self.real * other.real - self.imag * other.imag,
                           self.real * other.imag + self.imag * other.real)

    def conjugate(self) -> "GaussianInt":
        return GaussianInt(self.real, -self.imag)

    def norm(self) -> int:
        return self.real ** 2 + self.imag ** 2

    def is_unit(self) -> bool:
        return self.norm() == 1

    def divides(self, other: "GaussianInt") -> bool:
        n = self.norm()
        if n == 0:
            return other == GaussianInt(0)
        q = other * self.conjugate()
        return q.real % n == 0 and q.imag % n == 0

    def exact_div(self, other: "GaussianInt") -> "GaussianInt":
        if not other.divides(self):
            raise PreconditionError(f"{other} does not divide {self}")
        n = other.norm()
        q = self * other.conjugate()
        return GaussianInt(q.real // n, q.imag // n)


def two_square_representation(n: int) -> Optional[tuple[int, int]]:
    """Some (x, y) with 0 <= x <= y and x² + y² = n, found by exhaustive search."""
    for x in range(math.isqrt(n // 2) + 1):
        y2 = n - x * x
        y = math.isqrt(y2)
        if y * y == y2:
            return (x, y)
    return None


def is_gaussian_prime(p: int) -> bool:
    """Whether the rational prime p stays irreducible in Z[i] (iff p ≡ 3 mod 4).

    For p < 10**4 the congruence answer is cross-checked against an exhaustive
    search for p = x² + y² (a representation exists iff p = (x+yi)(x-yi) splits).
    """
    _require_prime(p)
    answer = p % 4 == 3
    if p < CONSTRUCTIVE_LIMIT and answer != (two_square_representation(p) is None):
        raise InternalInconsistency(f"two-squares search disagrees with p mod 4 for p={p}")
    return answer


@dataclass(frozen=True)
class ParityResult:
    alpha: Fraction
    beta: Fraction
    p: int
    valuation: Valuation
    parity: str
    cleared: tuple  # (α1·β2, β1·α2, v_p((α2·β2)²))
    strips: int  # times p was divided out of both Gaussian coordinates

    def to_dict(self) -> dict:
        return {
            "alpha": str(self.alpha), "beta": str(self.beta), "p": self.p,
            "valuation": str(self.valuation), "parity": self.parity,
            "cleared": [self.cleared[0], self.cleared[1], self.cleared[2]],
            "strips": self.strips,
        }


def check_valuation_parity(alpha, beta, p: int) -> ParityResult:
    """v_p(α² + β²) via denominator clearing and repeated Gaussian p-stripping.

    The result is compared against the direct valuation; for p ≡ 3 (mod 4)
    an odd answer raises :class:`ParityViolation`.
    """
    _require_prime(p)
    alpha, beta = Fraction(alpha), Fraction(beta)
    if alpha == 0 and beta == 0:
        raise PreconditionError("alpha and beta must not both be zero")
    a1, a2 = alpha.numerator, alpha.denominator
    b1, b2 = beta.numerator, beta.denominator
    u, w = a1 * b2, b1 * a2
    den_val = 2 * vp_int(a2 * b2, p)
    z = GaussianInt(u, w)
    gp = GaussianInt(p)
    strips = 0
    while z.norm() % p == 0 and gp.divides(z):
        z = z.exact_div(gp)
        strips += 1
    rest = vp_int(z.norm(), p)
    valuation = 2 * strips + rest - den_val
    direct = vp(alpha * alpha + beta * beta, p)
    if direct != valuation:
        raise InternalInconsistency(
            f"stripping gives {valuation}, direct factorization gives {direct}")
    parity = "even" if valuation % 2 == 0 else "odd"
    if p % 4 == 3 and parity == "odd":
        raise ParityViolation(f"v_{p}({alpha}^2 + {beta}^2) = {valuation} is odd")
    return ParityResult(alpha, beta, p, valuation, parity, (u, w, den_val), strips)


def sample_rational_pair(rng: random.Random, p: int, bound: int = 10 ** 6) -> tuple[Fraction, Fraction]:
    """Random rational pair, biased towards powers of p so divisibility cases occur."""
    def one():
        num = rng.randint(-bound, bound) * p ** rng.choice((0, 0, 1, 2, 3))
        den = rng.randint(1, bound) * p ** rng.choice((0, 0, 0, 1, 2))
        return Fraction(num, den)
    while True:
        a, b = one(), one()
        if a or b:
            return a, b


@dataclass
class ValuationParityCertificate:
    p: int
    claim: str
    samples: int
    seed: int
    even_count: int
    max_strips: int
    reduction_trace: list = field(default_factory=list)

    def to_dict(self) -> dict:
        return asdict(self)


def valuation_parity_certificate(p: int, samples: int = 10 ** 4, seed: int = 0,
                                 trace_len: int = 3) -> ValuationParityCertificate:
    """Check the parity claim for p ≡ 3 (mod 4) on seeded random rational pairs."""
    _require_prime(p)
    if p % 4 != 3:
        raise PreconditionError(f"{p} is not congruent to 3 mod 4")
    rng = random.Random(f"valuation-lemma:{p}:{seed}")
    even = max_strips = 0
    trace = []
    for n in range(samples):
        res = check_valuation_parity(*sample_rational_pair(rng, p), p)
        even += res.parity == "even"
        max_strips = max(max_strips, res.strips)
        if res.strips and len(trace) < trace_len:
            trace.append(res.to_dict())
    return ValuationParityCertificate(
        p, f"v_{p}(a^2 + b^2) is even for all rationals a, b not both zero",
        samples, seed, even, max_strips, trace)


def find_odd_witness(p: int, samples: int = 10 ** 4, seed: int = 0) -> Optional[ParityResult]:
    """Search seeded random pairs for an odd valuation (expected for p ≡ 1 mod 4)."""
    _require_prime(p)
    rng = random.Random(f"valuation-lemma:{p}:{seed}")
    for _ in range(samples):
        res = check_valuation_parity(*sample_rational_pair(rng, p), p)
        if res.parity == "odd":
            return res
    return None
