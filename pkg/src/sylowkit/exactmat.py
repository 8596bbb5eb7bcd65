"""Exact 2x2 matrices over the rationals.

Scalars are :class:`fractions.Fraction` (always reduced, positive
denominator). No floating point is used anywhere in this module.
"""
from __future__ import annotations

import math
import random
import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from .errors import InternalInconsistency, NotInvolution, NotUnimodular, PreconditionError, SingularMatrix

RationalScalar = Fraction


def parse_rational(text: str) -> Fraction:
    try:
        return Fraction(text.strip())
    except (ValueError, ZeroDivisionError) as exc:
        raise PreconditionError(f"bad rational literal {text!r}") from exc


def format_rational(x: Fraction) -> str:
    return str(Fraction(x))


@dataclass(frozen=True)
class RationalMat2:
    """Row-major [[a, b], [c, d]]."""

    a: Fraction
    b: Fraction
    c: Fraction
    d: Fraction

    def __post_init__(self):
        for name in "abcd":
            object.__setattr__(self, name, Fraction(getattr(self, name)))

    @classmethod
    def identity(cls) -> "RationalMat2":
        return cls(1, 0, 0, 1)

    @classmethod
    def parse(cls, text: str) -> "RationalMat2":
        """Parse the literal ``[a b; c d]`` with entries like ``-3`` or ``1/3``."""
        m = re.fullmatch(r"\s*\[\s*(\S+)\s+(\S+)\s*;\s*(\S+)\s+(\S+)\s*\]\s*", text)
        if not m:
            raise PreconditionError(f"bad matrix literal {text!r}; expected '[a b; c d]'")
        return cls(*(parse_rational(g) for g in m.groups()))

    def __str__(self):
        return f"[{self.a} {self.b}; {self.c} {self.d}]"

    def entries(self) -> tuple:
        return (self.a, self.b, self.c, self.d)

    def __mul__(self, other):
        if isinstance(other, RationalMat2):
            return mat_mul(self, other)
        if not isinstance(other, (int, Fraction)):
            return NotImplemented
        k = Fraction(other)
        return RationalMat2(k * self.a, k * self.b, k * self.c, k * self.d)

    __rmul__ = __mul__

    def __neg__(self):
        return RationalMat2(-self.a, -self.b, -self.c, -self.d)

    def __add__(self, other: "RationalMat2"):
        return RationalMat2(self.a + other.a, self.b + other.b, self.c + other.c, self.d + other.d)

    def __pow__(self, k: int):
        if k < 0:
            return mat_inv(self) ** (-k)
        result, base = RationalMat2.identity(), self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def det(self) -> Fraction:
        return mat_det(self)

    def inv(self) -> "RationalMat2":
        return mat_inv(self)

    def trace(self) -> Fraction:
        return self.a + self.d


IDENTITY = RationalMat2.identity()
MINUS_IDENTITY = -IDENTITY


def mat_mul(X: RationalMat2, Y: RationalMat2) -> RationalMat2:
    return RationalMat2(X.a * Y.a + X.b * Y.c, X.a * Y.b + X.b * Y.d,
                        X.c * Y.a + X.d * Y.c, X.c * Y.b + X.d * Y.d)


def mat_det(M: RationalMat2) -> Fraction:
    return M.a * M.d - M.b * M.c


def mat_inv(M: RationalMat2) -> RationalMat2:
    det = mat_det(M)
    if det == 0:
        raise SingularMatrix(f"{M} is singular")
    return RationalMat2(M.d / det, -M.b / det, -M.c / det, M.a / det)


def _require_unimodular(M: RationalMat2) -> None:
    if mat_det(M) != 1:
        raise NotUnimodular(f"det {M} = {mat_det(M)} != 1")


def matrix_order(M: RationalMat2, bound: int = 12) -> Optional[int]:
    """Least k <= bound with M^k = I, or None."""
    _require_unimodular(M)
    if bound < 1:
        raise PreconditionError("bound must be >= 1")
    P = M
    for k in range(1, bound + 1):
        if P == IDENTITY:
            return k
        P = P * M
    return None


def involution_classify(M: RationalMat2) -> str:
    """Classify M with M^2 = I in SL2(Q): ``"identity"`` or ``"central involution"``.

    If M is neither I nor -I it would have eigenvalues 1 and -1 and hence
    determinant -1, so that case is reported as an internal inconsistency.
    """
    _require_unimodular(M)
    if M * M != IDENTITY:
        raise NotInvolution(f"{M} does not square to the identity")
    if M == IDENTITY:
        return "identity"
    if M == MINUS_IDENTITY:
        return "central involution"
    raise InternalInconsistency(f"{M} squares to I with det 1 but is not ±I")


# canonical companion matrices of the finite orders possible in SL2(Q)
COMPANIONS = {
    1: IDENTITY,
    2: MINUS_IDENTITY,
    3: RationalMat2(0, -1, 1, -1),  # x^2 + x + 1
    4: RationalMat2(0, 1, -1, 0),   # x^2 + 1
    6: RationalMat2(0, -1, 1, 1),   # x^2 - x + 1
}


def random_unimodular_integer(rng: random.Random, bound: int = 1000) -> RationalMat2:
    """Random integer matrix of determinant 1 with first column entries in [-bound, bound]."""
    while True:
        a, c = rng.randint(-bound, bound), rng.randint(-bound, bound)
        if math.gcd(a, c) == 1:
            break
    # a*d - b*c = 1 via the extended Euclidean algorithm
    x0, y0, r0, r1, x1, y1 = 1, 0, a, c, 0, 1
    while r1:
        q = r0 // r1
        r0, r1 = r1, r0 - q * r1
        x0, x1 = x1, x0 - q * x1
        y0, y1 = y1, y0 - q * y1
    if r0 < 0:
        x0, y0 = -x0, -y0
    d, b = x0, -y0
    M = RationalMat2(a, b, c, d)
    if mat_det(M) != 1:
        raise InternalInconsistency("extended gcd produced a non-unimodular matrix")
    return M


def random_rational(rng: random.Random, bound: int = 1000, nonzero: bool = False) -> Fraction:
    while True:
        x = Fraction(rng.randint(-bound, bound), rng.randint(1, bound))
        if x or not nonzero:
            return x


def random_sl2q(rng: random.Random, bound: int = 1000) -> RationalMat2:
    """Random rational matrix of determinant 1 (a != 0, d solved from the determinant)."""
    a = random_rational(rng, bound, nonzero=True)
    b, c = random_rational(rng, bound), random_rational(rng, bound)
    return RationalMat2(a, b, c, (1 + b * c) / a)


def random_finite_order_sample(rng: random.Random, bound: int = 1000) -> tuple[RationalMat2, int]:
    """A conjugate of a random companion matrix, with the order it was built from."""
    k = rng.choice(sorted(COMPANIONS))
    U = random_unimodular_integer(rng, bound)
    return U * COMPANIONS[k] * mat_inv(U), k
