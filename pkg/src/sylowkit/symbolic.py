"""Sparse multivariate polynomials with rational coefficients.

Only what the SL2(Q) derivations need: ring operations, substitution,
coefficient lookup and a JSON round trip. Monomials are tuples of
``(variable, exponent)`` pairs sorted by variable name.
"""
from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Union

Scalar = Union[int, Fraction]


def _mono_mul(m1: tuple, m2: tuple) -> tuple:
    exps = dict(m1)
    for v, e in m2:
        exps[v] = exps.get(v, 0) + e
    return tuple(sorted(exps.items()))


class Poly:
    __slots__ = ("terms",)

    def __init__(self, terms=None):
        clean = {}
        for mono, coef in (terms or {}).items():
            coef = Fraction(coef)
            if coef:
                clean[tuple(sorted(mono))] = coef
        self.terms = clean

    @classmethod
    def var(cls, name: str) -> "Poly":
        return cls({((name, 1),): 1})

    @classmethod
    def const(cls, value: Scalar) -> "Poly":
        return cls({(): value})

    @classmethod
    def monomial(cls, coef: Scalar, **exps: int) -> "Poly":
        return cls({tuple(sorted((v, e) for v, e in exps.items() if e)): coef})

    @staticmethod
    def lift(x) -> "Poly":
        return x if isinstance(x, Poly) else Poly.const(x)

    def __add__(self, other):
        other = Poly.lift(other)
        out = dict(self.terms)
        for m, c in other.terms.items():
            out[m] = out.get(m, 0) + c
        return Poly(out)

    __radd__ = __add__

    def __neg__(self):
        return Poly({m: -c for m, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-Poly.lift(other))

    def __rsub__(self, other):
        return Poly.lift(other) - self

    def __mul__(self, other):
        other = Poly.lift(other)
        out: dict = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                m = _mono_mul(m1, m2)
                out[m] = out.get(m, 0) + c1 * c2
        return Poly(out)

    __rmul__ = __mul__

    def __truediv__(self, k: Scalar):
        k = Fraction(k)
        return Poly({m: c / k for m, c in self.terms.items()})

    def __pow__(self, n: int):
        out = Poly.const(1)
        for _ in range(n):
            out = out * self
        return out

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = Poly.const(other)
        if not isinstance(other, Poly):
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def is_zero(self) -> bool:
        return not self.terms

    def coeff(self, **exps: int) -> Fraction:
        return self.terms.get(tuple(sorted((v, e) for v, e in exps.items() if e)), Fraction(0))

    def constant(self) -> Fraction:
        return self.terms.get((), Fraction(0))

    def variables(self) -> set:
        return {v for m in self.terms for v, _ in m}

    def subs(self, **values) -> "Poly":
        """Substitute polynomials (or scalars) for variables."""
        out = Poly()
        for mono, coef in self.terms.items():
            term = Poly.const(coef)
            for v, e in mono:
                term = term * (Poly.lift(values[v]) ** e if v in values else Poly({((v, e),): 1}))
            out = out + term
        return out

    def is_positive_sum_of_squares(self) -> bool:
        """Every monomial is an even power product with positive coefficient.

        Such a polynomial is >= 0 at every rational point, and > 0 when the
        constant term is positive.
        """
        return all(c > 0 and all(e % 2 == 0 for _, e in m) for m, c in self.terms.items())

    def __repr__(self):
        return f"Poly({str(self)!r})"

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for mono in sorted(self.terms, key=lambda m: (-sum(e for _, e in m), m)):
            c = self.terms[mono]
            body = "*".join(v if e == 1 else f"{v}^{e}" for v, e in mono)
            if not body:
                parts.append(str(c))
            elif c == 1:
                parts.append(body)
            elif c == -1:
                parts.append("-" + body)
            else:
                parts.append(f"{c}*{body}")
        return " + ".join(parts).replace("+ -", "- ")

    def to_json(self) -> list:
        return [[[list(p) for p in m], str(c)] for m, c in sorted(self.terms.items())]

    @classmethod
    def from_json(cls, data: Iterable) -> "Poly":
        return cls({tuple((v, int(e)) for v, e in m): Fraction(c) for m, c in data})


class PolyMat2:
    """2x2 matrix with polynomial entries, row-major."""

    def __init__(self, a, b, c, d):
        self.entries = tuple(Poly.lift(x) for x in (a, b, c, d))

    @classmethod
    def symbolic(cls, names: str = "abcd") -> "PolyMat2":
        return cls(*(Poly.var(n) for n in names))

    @classmethod
    def from_rational(cls, M) -> "PolyMat2":
        return cls(M.a, M.b, M.c, M.d)

    def __getitem__(self, ij):
        i, j = ij
        return self.entries[2 * i + j]

    def __mul__(self, other):
        if not isinstance(other, PolyMat2):
            other = PolyMat2.from_rational(other) if hasattr(other, "a") else PolyMat2(other, 0, 0, other)
        x, y = self.entries, other.entries
        return PolyMat2(x[0] * y[0] + x[1] * y[2], x[0] * y[1] + x[1] * y[3],
                        x[2] * y[0] + x[3] * y[2], x[2] * y[1] + x[3] * y[3])

    def __rmul__(self, other):
        return PolyMat2.from_rational(other) * self

    def __add__(self, other):
        return PolyMat2(*(p + q for p, q in zip(self.entries, other.entries)))

    def __eq__(self, other):
        return isinstance(other, PolyMat2) and self.entries == other.entries

    def det(self) -> Poly:
        a, b, c, d = self.entries
        return a * d - b * c

    def subs(self, **values) -> "PolyMat2":
        return PolyMat2(*(p.subs(**values) for p in self.entries))
