"""Acceptance criteria, each at its stated tolerance and time limit.

Every test records one PASS/FAIL line; the lines are echoed in the pytest
terminal summary (see conftest.py) and printed directly when run with -s.
"""
import time
from fractions import Fraction

import pytest

from sylowkit.corpus import corpus_names, group_by_name
from sylowkit.escalation import check_involution_dichotomy, find_conjugator
from sylowkit.folang import builtin_sentences, evaluate
from sylowkit.groups import centralizer_dimension, conjugate_subgroup, find_subgroup_conjugator
from sylowkit.padic import find_odd_witness, valuation_parity_certificate
from sylowkit.platonov import (
    nonconjugacy_certificate, order8_impossibility, platonov_generator, primes_3_mod_4,
    q8_embedding_refutation,
)
from sylowkit.exactmat import MINUS_IDENTITY, IDENTITY
from sylowkit.sylow import all_sylow_p, is_prime, prime_divisors, verify_sylow_theorems
from sylowkit.symbolic import Poly

RESULTS: dict = {}


class Criterion:
    def __init__(self, number: int, title: str, limit: float):
        self.number, self.title, self.limit = number, title, limit
        self.problems: list = []

    def check(self, cond: bool, message: str) -> None:
        if not cond:
            self.problems.append(message)

    def __enter__(self):
        self.start = time.perf_counter()
        return self

    def __exit__(self, exc_type, exc, tb):
        elapsed = time.perf_counter() - self.start
        if exc is not None:
            self.problems.append(f"{exc_type.__name__}: {exc}")
        self.check(elapsed < self.limit, f"took {elapsed:.1f}s, limit {self.limit:.0f}s")
        status = "PASS" if not self.problems else "FAIL"
        detail = "" if not self.problems else " -- " + "; ".join(self.problems[:3])
        line = f"criterion {self.number} [{status}] {self.title} ({elapsed:.1f}s){detail}"
        RESULTS[self.number] = line
        print(line)
        if exc is None and self.problems:
            pytest.fail(line)
        return False


def corpus_groups():
    return [group_by_name(n) for n in corpus_names(200)]


def test_criterion_1_platonov_suite():
    with Criterion(1, "Platonov generators and 28 non-conjugacy certificates", 10) as c:
        primes = primes_3_mod_4(8)
        c.check(primes == [3, 7, 11, 19, 23, 31, 43, 47], f"primes {primes}")
        for p in primes:
            g = platonov_generator(p).matrix
            c.check(g.det() == 1, f"det g_{p}")
            c.check(g * g == MINUS_IDENTITY, f"g_{p}^2 != -I")
            c.check(g ** 4 == IDENTITY and g ** 2 != IDENTITY, f"order of g_{p}")
        pairs = 0
        a, cc = Poly.var("a"), Poly.var("c")
        for i, p_i in enumerate(primes):
            for p_j in primes[i + 1:]:
                pairs += 1
                cert = nonconjugacy_certificate(p_i, p_j)
                lhs, rhs = (Poly.from_json(cert.case1["final"][k]) for k in ("lhs", "rhs"))
                # p_i (a^2 + c^2 p_j^2) = p_j, coefficient by coefficient
                c.check(lhs.coeff(a=2) == p_i and lhs.coeff(c=2) == p_i * p_j ** 2
                        and len(lhs.terms) == 2 and rhs == p_j, f"equation for ({p_i},{p_j}): {lhs} = {rhs}")
                c.check(cert.refutations["case1"]["passed"], f"parity refutation ({p_i},{p_j})")
                c.check(cert.passed and cert.verify(), f"certificate ({p_i},{p_j})")
        c.check(pairs == 28, f"{pairs} pairs")


def test_criterion_2_valuation_parity():
    with Criterion(2, "v_p(a^2+b^2) parity for primes below 200", 30) as c:
        for p in range(2, 200):
            if not is_prime(p):
                continue
            if p % 4 == 3:
                cert = valuation_parity_certificate(p, samples=10 ** 4, seed=0)
                c.check(cert.even_count == 10 ** 4, f"odd valuation found for p={p}")
            elif p % 4 == 1:
                w = find_odd_witness(p, samples=10 ** 4, seed=0)
                c.check(w is not None and w.parity == "odd", f"no odd witness for p={p}")


def test_criterion_3_dichotomy():
    with Criterion(3, "dichotomy sentence vs direct checker on the corpus", 300) as c:
        sentence = builtin_sentences()["dichotomy"]
        groups = corpus_groups()
        c.check(len(groups) >= 300, f"corpus has {len(groups)} groups")
        for G in groups:
            fo = evaluate(G, sentence, "dichotomy").truth
            direct = check_involution_dichotomy(G).ok
            c.check(fo and direct, f"{G.label}: first-order {fo}, direct {direct}")


def test_criterion_4_escalation():
    with Criterion(4, "escalation conjugators for all ordered Sylow 2-pairs", 300) as c:
        pairs = agree = 0
        for G in corpus_groups():
            if G.order % 2:
                continue
            subs = all_sylow_p(G, 2)
            for P in subs:
                for Q in subs:
                    if P == Q:
                        continue
                    pairs += 1
                    trace = find_conjugator(G, P, Q)
                    ok = conjugate_subgroup(P, trace.conjugator) == Q
                    c.check(ok, f"{G.label}: unverified conjugator")
                    c.check(trace.is_monotone(), f"{G.label}: intersection orders not increasing")
                    oracle = find_subgroup_conjugator(G, P, Q)
                    agree += ok == (oracle is not None)
        c.check(pairs > 0 and agree == pairs, f"oracle agreement {agree}/{pairs}")


def test_criterion_5_sylow_oracle():
    with Criterion(5, "Sylow theorems for every corpus group and prime", 120) as c:
        for G in corpus_groups():
            for p in prime_divisors(G.order):
                rep = verify_sylow_theorems(G, p)
                c.check(rep.all_conjugate and rep.count % p == 1, f"{G.label}, p={p}")


def test_criterion_6_centralizer_dimension_growth():
    with Criterion(6, "cdim(A4) < cdim(A5) < cdim(A6)", 600) as c:
        values = {n: centralizer_dimension(group_by_name(f"A{n}")) for n in (4, 5, 6)}
        c.check(values[4] < values[5] < values[6], f"values {values}")


def test_criterion_7_sl2q_properties():
    with Criterion(7, "finite-order structure of SL2(Q)", 30) as c:
        o8 = order8_impossibility(samples=1000, seed=0)
        q8 = q8_embedding_refutation(samples=1000, seed=0)
        c.check(o8["passed"], "order-8 refutation")
        c.check(q8["passed"], "Q8 refutation")
        survey = o8["finite_order_survey"]
        c.check(sum(survey["orders"].values()) == 1000, "sample count")
        c.check(set(survey["orders"]) <= {"1", "2", "3", "4", "6"}, f"orders {survey['orders']}")
        classes = set(survey["involution_classes"]) - {"identity"}
        c.check(classes == {"central involution"}, f"involution classes {classes}")
        c.check(Fraction(3, 2) ** 2 != 2, "t = 3/2")


def test_criterion_8_doubling():
    with Criterion(8, "doubling sentence on the corpus", 60) as c:
        sentence = builtin_sentences()["doubling"]
        for G in corpus_groups():
            c.check(evaluate(G, sentence, "doubling").truth, f"{G.label}")
