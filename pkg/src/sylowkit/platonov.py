"""Order-4 subgroups S_p = <g_p> of SL2(Q) that are pairwise non-conjugate.

For primes p ≡ 3 (mod 4), g_p = [0 -p; 1/p 0] has order 4. A conjugator
g = [a b; c d] with g g_i g^-1 = g_j would satisfy p_i(a² + c²p_j²) = p_j,
impossible because the left side has even p_j-adic valuation while the right
side has valuation 1. Mapping g_i to g_j³ = -g_j instead gives
p_i(a² + c²p_j²) = -p_j, impossible by sign.

Everything here is exact; every record serializes to JSON and re-verifies.
"""
from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

from .errors import BadPrime, InternalInconsistency, SamePrime
from .exactmat import (
    IDENTITY, MINUS_IDENTITY, RationalMat2, involution_classify, matrix_order,
    random_finite_order_sample, random_rational, random_sl2q,
)
from .padic import check_valuation_parity, is_gaussian_prime, vp
from .sylow import is_prime
from .symbolic import Poly, PolyMat2

A_, B_, C_, D_ = (Poly.var(v) for v in "abcd")
ENTRY_ORDER = ((0, 0), (1, 0), (0, 1), (1, 1))  # the order the four equalities are listed in


def primes_3_mod_4(count: int) -> list[int]:
    out, n = [], 3
    while len(out) < count:
        if n % 4 == 3 and is_prime(n):
            out.append(n)
        n += 1
    return out


def _require_valid(p: int) -> None:
    if not is_prime(p) or p % 4 != 3:
        raise BadPrime(f"{p} is not a prime congruent to 3 mod 4")


@dataclass(frozen=True)
class PlatonovGenerator:
    p: int
    matrix: RationalMat2
    order: int

    def to_dict(self) -> dict:
        return {"p": self.p, "matrix": str(self.matrix), "order": self.order,
                "det": str(self.matrix.det()), "square": str(self.matrix * self.matrix)}


def generator_matrix(p: int) -> RationalMat2:
    return RationalMat2(0, -p, Fraction(1, p), 0)


def platonov_generator(p: int) -> PlatonovGenerator:
    _require_valid(p)
    g = generator_matrix(p)
    if g.det() != 1 or g * g != MINUS_IDENTITY or g ** 4 != IDENTITY:
        raise InternalInconsistency(f"generator for p={p} fails det/square/fourth-power checks")
    order = matrix_order(g, bound=12)
    if order != 4:
        raise InternalInconsistency(f"generator for p={p} has order {order}")
    return PlatonovGenerator(p, g, order)


# -- symbolic elimination ----------------------------------------------------

def _eq_json(lhs: Poly, rhs: Poly) -> dict:
    return {"lhs": lhs.to_json(), "rhs": rhs.to_json(), "text": f"{lhs} = {rhs}"}


def _eq_from_json(d: dict) -> tuple[Poly, Poly]:
    return Poly.from_json(d["lhs"]), Poly.from_json(d["rhs"])


def derive_conjugation_equation(p_i: int, p_j: int, case: int) -> dict:
    """Eliminate b, d from g·g_i = T·g and det g = 1, where T is g_j (case 1) or g_j³ (case 2).

    Mirrors the hand computation: multiply the first equality by -c·p_i and
    the third by -a/p_j, substitute the products -bc and ad into ad - bc = 1,
    then clear the denominator.
    """
    gi, gj = generator_matrix(p_i), generator_matrix(p_j)
    target = gj if case == 1 else gj ** 3
    if case == 2 and target != -gj:
        raise InternalInconsistency("g_j^3 != -g_j")
    g = PolyMat2.symbolic()
    left, right = g * gi, target * g
    equalities = [(left[ij], right[ij]) for ij in ENTRY_ORDER]

    mult1, mult3 = -C_ * p_i, A_ * Fraction(-1, p_j)
    (l1, r1), (l3, r3) = equalities[0], equalities[2]
    e1 = (l1 * mult1, r1 * mult1)
    e3 = (l3 * mult3, r3 * mult3)
    delta1, delta3 = e1[0] - e1[1], e3[0] - e3[1]
    beta, alpha = delta1.coeff(b=1, c=1), delta3.coeff(a=1, d=1)
    if beta == 0 or alpha == 0:
        raise InternalInconsistency("multiplied equations do not isolate bc and ad")
    ad_value = (delta3 - alpha * A_ * D_) * Fraction(-1) / alpha
    minus_bc_value = (delta1 - beta * B_ * C_) / beta
    det = g.det()
    combined = ad_value + minus_bc_value
    if combined.variables() - {"a", "c"}:
        raise InternalInconsistency(f"elimination left b or d behind: {combined}")
    a2 = combined.coeff(a=2)
    scale = Fraction(p_i) / a2
    final = (combined * scale, Poly.const(scale))
    return {
        "p_i": p_i, "p_j": p_j, "case": case,
        "target": "g_j" if case == 1 else "g_j^3 = -g_j",
        "equalities": [dict(entry=[i + 1, j + 1], **_eq_json(l, r))
                       for (i, j), (l, r) in zip(ENTRY_ORDER, equalities)],
        "multiplied": [
            dict(source=0, multiplier=mult1.to_json(), **_eq_json(*e1)),
            dict(source=2, multiplier=mult3.to_json(), **_eq_json(*e3)),
        ],
        "determinant": det.to_json(),
        "substituted": {"ad": ad_value.to_json(), "-bc": minus_bc_value.to_json()},
        "combined": _eq_json(combined, Poly.const(1)),
        "scale": str(scale),
        "final": _eq_json(*final),
    }


def expected_diamond(p_i: int, p_j: int, case: int) -> tuple[Poly, Poly]:
    """p_i·a² + p_i·p_j²·c² = ±p_j."""
    lhs = Poly.monomial(p_i, a=2) + Poly.monomial(p_i * p_j * p_j, c=2)
    return lhs, Poly.const(p_j if case == 1 else -p_j)


def verify_derivation(record: dict) -> bool:
    """Re-run the elimination from the primes and check every recorded step."""
    p_i, p_j, case = record["p_i"], record["p_j"], record["case"]
    fresh = derive_conjugation_equation(p_i, p_j, case)
    if fresh != record:
        return False
    eqs = [_eq_from_json(e) for e in record["equalities"]]
    for m in record["multiplied"]:
        l0, r0 = eqs[m["source"]]
        mult = Poly.from_json(m["multiplier"])
        if _eq_from_json(m) != (l0 * mult, r0 * mult):
            return False
    (l1, r1), (l3, r3) = (_eq_from_json(m) for m in record["multiplied"])
    det = Poly.from_json(record["determinant"])
    if det != A_ * D_ - B_ * C_:
        return False
    combined, one = _eq_from_json(record["combined"])
    beta, alpha = (l1 - r1).coeff(b=1, c=1), (l3 - r3).coeff(a=1, d=1)
    # combined - 1 must equal (det - 1) minus multiples of the two equations
    if combined - one != (det - 1) - (l3 - r3) / alpha + (l1 - r1) / beta:
        return False
    scale = Fraction(record["scale"])
    final = _eq_from_json(record["final"])
    if final != (combined * scale, one * scale):
        return False
    return final == expected_diamond(p_i, p_j, case)


# -- refutations ---------------------------------------------------------------

def refute_case1(p_i: int, p_j: int, samples: int, rng: random.Random) -> dict:
    """Parity: v_pj(RHS) = 1, v_pj(LHS) = v_pj(p_i) + v_pj(a² + (c·p_j)²) = 0 + even."""
    rhs_val = vp(p_j, p_j)
    pi_val = vp(p_i, p_j)
    gaussian = is_gaussian_prime(p_j)
    bad = []
    for _ in range(samples):
        a, c = random_rational(rng, 10 ** 4), random_rational(rng, 10 ** 4)
        if a == 0 and c == 0:
            continue
        res = check_valuation_parity(a, c * p_j, p_j)
        lhs = p_i * (a * a + c * c * p_j * p_j)
        lhs_val = vp(lhs, p_j)
        if lhs_val != pi_val + res.valuation or lhs_val == rhs_val or lhs == p_j:
            bad.append([str(a), str(c)])
    passed = rhs_val == 1 and pi_val == 0 and gaussian and not bad
    return {
        "method": "p-adic valuation parity",
        "prime": p_j,
        "rhs_valuation": rhs_val,
        "v_pj(p_i)": pi_val,
        "pj_irreducible_in_Z[i]": gaussian,
        "lhs_valuation": "0 + even (never 1)",
        "zero_pair": "(a, c) = (0, 0) gives LHS 0 != p_j",
        "sampled_pairs": samples,
        "violations": bad,
        "passed": passed,
    }


def refute_case2(record: dict) -> dict:
    lhs, rhs = _eq_from_json(record["final"])
    nonneg = lhs.is_positive_sum_of_squares() and lhs.constant() == 0
    passed = nonneg and rhs.constant() < 0
    return {
        "method": "sign",
        "lhs": str(lhs),
        "lhs_nonnegative": nonneg,
        "rhs": str(rhs),
        "zero_pair": "(a, c) = (0, 0) gives LHS 0 != RHS, and a = c = 0 forces det = 0",
        "passed": passed,
    }


def sample_conjugators(p_i: int, p_j: int, samples: int, rng: random.Random) -> dict:
    gi, gj = generator_matrix(p_i), generator_matrix(p_j)
    hits = []
    for _ in range(samples):
        g = random_sl2q(rng, 10 ** 3)
        image = g * gi * g.inv()
        if image == gj or image == -gj:
            hits.append(str(g))
    return {"sampled": samples, "conjugating": hits, "passed": not hits}


@dataclass
class NonConjugacyCertificate:
    p_i: int
    p_j: int
    case1: dict
    case2: dict
    refutations: dict
    sampling: dict
    seed: int = 0

    @property
    def passed(self) -> bool:
        return (self.refutations["case1"]["passed"] and self.refutations["case2"]["passed"]
                and self.sampling["passed"])

    def diamond_matches(self) -> bool:
        return all(
            _eq_from_json(rec["final"]) == expected_diamond(self.p_i, self.p_j, rec["case"])
            for rec in (self.case1, self.case2))

    def verify(self) -> bool:
        """Re-check the derivations and refutation structure from stored data."""
        if not (verify_derivation(self.case1) and verify_derivation(self.case2)):
            return False
        if not self.diamond_matches():
            return False
        r1 = self.refutations["case1"]
        if r1["rhs_valuation"] != vp(self.p_j, self.p_j) or r1["v_pj(p_i)"] != vp(self.p_i, self.p_j):
            return False
        if refute_case2(self.case2)["passed"] != self.refutations["case2"]["passed"]:
            return False
        return self.passed

    def to_dict(self) -> dict:
        return {
            "p_i": self.p_i, "p_j": self.p_j, "seed": self.seed,
            "case1": self.case1, "case2": self.case2,
            "refutations": self.refutations, "sampling": self.sampling,
            "passed": self.passed,
        }

    @classmethod
    def from_dict(cls, d: dict) -> "NonConjugacyCertificate":
        return cls(d["p_i"], d["p_j"], d["case1"], d["case2"], d["refutations"],
                   d["sampling"], d.get("seed", 0))


def nonconjugacy_certificate(p_i: int, p_j: int, samples: int = 1000, seed: int = 0) -> NonConjugacyCertificate:
    _require_valid(p_i)
    _require_valid(p_j)
    if p_i == p_j:
        raise SamePrime(f"both primes are {p_i}")
    rng = random.Random(f"platonov:{p_i}:{p_j}:{seed}")
    case1 = derive_conjugation_equation(p_i, p_j, 1)
    case2 = derive_conjugation_equation(p_i, p_j, 2)
    refutations = {"case1": refute_case1(p_i, p_j, samples, rng), "case2": refute_case2(case2)}
    sampling = sample_conjugators(p_i, p_j, samples, rng)
    return NonConjugacyCertificate(p_i, p_j, case1, case2, refutations, sampling, seed)


def q8_embedding_refutation(samples: int = 1000, seed: int = 0) -> dict:
    """No A, B with A² = B² = -I and AB = -BA, over Q.

    A is taken as [0 1; -1 0], the canonical form of any order-4 real matrix
    up to real conjugation (cited, not recomputed here).
    """
    A = RationalMat2(0, 1, -1, 0)
    B = PolyMat2.symbolic()
    anti = A * B + B * A
    constraints = [p for p in anti.entries if not p.is_zero()]
    # solve the linear constraints for c and d
    solution: dict = {}
    pending = list(constraints)
    for v in ("c", "d"):
        for n, eq in enumerate(pending):
            k = eq.coeff(**{v: 1})
            if k:
                solution[v] = (Poly.var(v) * k - eq) / k
                pending.pop(n)
                pending = [e.subs(**{v: solution[v]}) for e in pending]
                solution = {w: s.subs(**{v: solution[v]}) for w, s in solution.items()}
                break
    leftovers = [str(e) for e in pending if not e.is_zero()]
    shape = B.subs(**solution)
    shape_ok = shape == PolyMat2(A_, B_, B_, -A_) and not leftovers
    square = shape * shape
    s = square[0, 0]
    scalar_ok = square[0, 1].is_zero() and square[1, 0].is_zero() and square[1, 1] == s
    obstruction = s + 1  # B² = -I  <=>  s + 1 = 0
    unsat = obstruction.is_positive_sum_of_squares() and obstruction.constant() > 0

    rng = random.Random(f"q8:{seed}")
    shape_violations = 0
    for _ in range(samples):
        a, b = random_rational(rng), random_rational(rng)
        Bs = RationalMat2(a, b, b, -a)
        if A * Bs != -(Bs * A) or Bs * Bs != (a * a + b * b) * IDENTITY or Bs * Bs == MINUS_IDENTITY:
            shape_violations += 1
        R = RationalMat2(*(random_rational(rng) for _ in range(4)))
        anticommutes = A * R == -(R * A)
        if anticommutes != (R.c == R.b and R.d == -R.a):
            shape_violations += 1
    example = RationalMat2(1, 1, 1, -1)
    return {
        "A": str(A),
        "assumption": "every order-4 element of GL2(R) is conjugate to A (real canonical form, cited)",
        "anticommutation_constraints": [str(c) + " = 0" for c in constraints],
        "solved": {k: str(v) for k, v in solution.items()},
        "B_shape": "[a b; b -a]" if shape_ok else str(shape.entries),
        "B_squared": f"({s}) * I" if scalar_ok else "not scalar",
        "obstruction": f"{obstruction} = 0 over Q: unsatisfiable" if unsat else str(obstruction),
        "example": {"B": str(example), "B^2": str(example * example)},
        "sampled": samples,
        "sample_violations": shape_violations,
        "passed": shape_ok and scalar_ok and unsat and shape_violations == 0
                  and example * example != MINUS_IDENTITY,
    }


def _finite_order_survey(samples: int, rng: random.Random) -> dict:
    orders: dict = {}
    involution_classes: dict = {}
    mismatches = 0
    for _ in range(samples):
        M, built = random_finite_order_sample(rng)
        k = matrix_order(M, bound=12)
        if k != built:
            mismatches += 1
        orders[k] = orders.get(k, 0) + 1
        if M * M == IDENTITY:
            cls = involution_classify(M)
            involution_classes[cls] = involution_classes.get(cls, 0) + 1
    return {"orders": {str(k): v for k, v in sorted(orders.items(), key=lambda kv: str(kv[0]))},
            "involution_classes": involution_classes, "mismatches": mismatches}


def order8_impossibility(samples: int = 1000, seed: int = 0) -> dict:
    """No element of order 8 in SL2(Q).

    With trace t, Cayley-Hamilton gives M² = tM - I. Reducing M⁴ in the basis
    {I, M} and imposing M⁴ = -I (the unique involution) forces t² = 2, which
    has no rational root since v_2(t²) is even and v_2(2) = 1.
    """
    t = Poly.var("t")
    # elements x0·I + x1·M of Q[t][M]/(M² - tM + 1)
    def mul(x, y):
        x0, x1 = x
        y0, y1 = y
        m2 = x1 * y1
        return (x0 * y0 - m2, x0 * y1 + x1 * y0 + m2 * t)
    M2 = mul((Poly.const(0), Poly.const(1)), (Poly.const(0), Poly.const(1)))
    M4 = mul(M2, M2)
    # M⁴ = -I  <=>  coefficient of I is -1 and coefficient of M is 0 (M is not scalar)
    eq_identity = M4[0] + 1
    eq_m = M4[1]
    t2_minus_2 = t * t - 2
    forced = (eq_identity == -t2_minus_2) and (eq_m == t * t2_minus_2)

    rng = random.Random(f"order8:{seed}")
    parity_ok = True
    for _ in range(samples):
        q = random_rational(rng, 10 ** 4, nonzero=True)
        if vp(q * q, 2) != 2 * vp(q, 2) or q * q == 2:
            parity_ok = False
    survey = _finite_order_survey(samples, rng)
    no_order8 = "8" not in survey["orders"] and "None" not in survey["orders"]
    example = Fraction(3, 2)
    return {
        "characteristic_polynomial": "x^2 - t*x + 1",
        "M^2": f"{M2[1]}*M + ({M2[0]})*I",
        "M^4": f"({M4[1]})*M + ({M4[0]})*I",
        "forced_equation": "t^2 = 2" if forced else "derivation mismatch",
        "parity": "v_2(t^2) = 2*v_2(t) is even, v_2(2) = 1 is odd: no rational t",
        "example": {"t": str(example), "t^2": str(example * example)},
        "sampled_t": samples,
        "finite_order_survey": survey,
        "passed": forced and parity_ok and no_order8 and vp(2, 2) == 1
                  and survey["mismatches"] == 0,
    }


def unique_involution_evidence(p: int, samples: int = 1000, seed: int = 0) -> dict:
    rng = random.Random(f"involution:{p}:{seed}")
    g = generator_matrix(p)
    square_class = involution_classify(g * g)
    survey = _finite_order_survey(samples, rng)
    classes = set(survey["involution_classes"])
    return {
        "g_p^2": str(g * g),
        "g_p^2_class": square_class,
        "survey": survey,
        "passed": square_class == "central involution"
                  and classes <= {"identity", "central involution"}
                  and set(survey["orders"]) <= {"1", "2", "3", "4", "6"},
    }


def sylow_certificate(p: int, samples: int = 1000, seed: int = 0) -> dict:
    gen = platonov_generator(p)
    blocks = {
        "generator": dict(gen.to_dict(), passed=gen.order == 4),
        "unique_involution": unique_involution_evidence(p, samples, seed),
        "no_order_8_element": order8_impossibility(samples, seed),
        "no_q8_subgroup": q8_embedding_refutation(samples, seed),
    }
    return {
        "p": p,
        "subgroup_order": gen.order,
        "evidence": blocks,
        "maximality": {
            "status": "cited",
            "chain": [
                "a unique involution leaves C8 and Q8 as the only candidates of order 8",
                "no order-8 element rules out C8; the anticommutation argument rules out Q8",
                "so SL2(Q) has no subgroup of order 8",
                "periodic linear groups are locally finite (Schur), so an infinite 2-subgroup "
                "would contain a finite subgroup of order > 8 and hence one of order 8",
                "therefore every 2-subgroup has order <= 4 and <g_p> is a maximal 2-subgroup",
            ],
            "verified": False,
        },
        "passed": all(b["passed"] for b in blocks.values()),
    }
