"""Conjugating Sylow 2-subgroups by growing their intersection.

Given distinct Sylow 2-subgroups P and Q with D = P ∩ Q, both N_P(D) and
N_Q(D) strictly contain D, so N_G(D)/D holds involutions ī (from N_P(D)) and
j̄ (from N_Q(D)). Either they are conjugate in N_G(D)/D (case 1: P^x meets Q
in more than D) or some involution k̄ commutes with both (case 2: a chain
P, R_i, R_j, Q of Sylow subgroups whose consecutive intersections exceed D).
Recursing on the produced pairs terminates because intersections only grow.
"""
from __future__ import annotations

import random
from dataclasses import dataclass, field
from typing import Optional

from .errors import DichotomyFailure, InternalInconsistency, NotSylow, NotTwoGroup, PreconditionError
from .groups import (
    FiniteGroup, Subgroup, conjugate_subgroup, generate_subgroup, intersection,
    involutions, is_p_power, normalizer, p_part, quotient,
)
from .sylow import extend_to_maximal_p_subgroup

CASE1 = "case1_conjugate"
CASE2 = "case2_common_involution"


@dataclass(frozen=True)
class EscalationStep:
    kind: str
    leg: tuple
    D_order: int
    i_bar: int
    j_bar: int
    i: int
    j: int
    pairs: tuple  # ((P1, Q1, |P1 ∩ Q1|), ...)
    k_bar: Optional[int] = None
    k: Optional[int] = None
    conjugator: Optional[int] = None

    def to_dict(self, G: FiniteGroup) -> dict:
        return {
            "kind": self.kind,
            "leg": list(self.leg),
            "D_order": self.D_order,
            "i": G.name(self.i), "j": G.name(self.j),
            "k": None if self.k is None else G.name(self.k),
            "quotient_ids": {"i": self.i_bar, "j": self.j_bar, "k": self.k_bar},
            "new_intersection_orders": [n for _, _, n in self.pairs],
            "conjugator_fragment": None if self.conjugator is None else G.name(self.conjugator),
        }


@dataclass(frozen=True)
class ConjugatorTrace:
    group: FiniteGroup
    P: Subgroup
    Q: Subgroup
    steps: tuple
    conjugator: int
    rounds: int = field(init=False)

    def __post_init__(self):
        object.__setattr__(self, "rounds", len(self.steps))

    def verify(self) -> bool:
        """Independent check that conjugator·P·conjugator⁻¹ = Q."""
        return conjugate_subgroup(self.P, self.conjugator) == self.Q

    def is_monotone(self) -> bool:
        """Each step's |D| exceeds that of the step whose leg spawned it."""
        by_leg = {s.leg: s for s in self.steps}
        for s in self.steps:
            if s.leg and s.leg[:-1] in by_leg and by_leg[s.leg[:-1]].D_order >= s.D_order:
                return False
            if any(n <= s.D_order for _, _, n in s.pairs):
                return False
        return True

    def to_dict(self) -> dict:
        G = self.group
        return {
            "group": G.label,
            "P": [G.name(x) for x in self.P.elements],
            "Q": [G.name(x) for x in self.Q.elements],
            "conjugator": G.name(self.conjugator),
            "rounds": self.rounds,
            "steps": [s.to_dict(G) for s in self.steps],
        }


def _require_sylow2(G: FiniteGroup, S: Subgroup, name: str) -> None:
    if not is_p_power(S.order, 2) or S.order != p_part(G.order, 2):
        raise NotSylow(f"{name} (order {S.order}) is not a Sylow 2-subgroup of {G.label}")


def _pick(options: list, rng: Optional[random.Random]):
    if not options:
        return None
    return options[0] if rng is None else rng.choice(options)


def _involutions_among(Qg: FiniteGroup, candidates) -> list[int]:
    return [q for q in sorted(candidates) if q != 0 and Qg.mul(q, q) == 0]


def escalation_step(G: FiniteGroup, P: Subgroup, Q: Subgroup, leg: tuple = (),
                    rng: Optional[random.Random] = None) -> EscalationStep:
    """One round of intersection growth.

    Involutions and conjugators are the least quotient ids unless ``rng`` is
    given, in which case each is drawn uniformly from the valid candidates.
    """
    if P == Q:
        raise PreconditionError("escalation needs two distinct Sylow 2-subgroups")
    _require_sylow2(G, P, "P")
    _require_sylow2(G, Q, "Q")
    D = intersection(P, Q)
    NPD = normalizer(G, D, within=P)
    NQD = normalizer(G, D, within=Q)
    if NPD.order == D.order or NQD.order == D.order:
        raise InternalInconsistency("normalizer condition failed inside a finite 2-group")
    NGD = G.memo(("normalizer", D.members), lambda: normalizer(G, D))
    bar = G.memo(("quotient", D.members), lambda: quotient(NGD, D))
    Qg = bar.carrier

    i_bar = _pick(_involutions_among(Qg, bar.image(NPD)), rng)
    j_bar = _pick(_involutions_among(Qg, bar.image(NQD)), rng)
    if i_bar is None or j_bar is None:
        raise InternalInconsistency("nontrivial 2-group image without an involution")
    i, j = bar.lift(i_bar), bar.lift(j_bar)

    x_bar = _pick([x for x in range(Qg.order) if Qg.conj(x, i_bar) == j_bar], rng)
    if x_bar is not None:
        x = bar.lift(x_bar)
        P1 = conjugate_subgroup(P, x)
        # j = x i d1 x^-1 lies in P^x ∩ Q, and D ⊆ P^x since x normalizes D
        if j not in P1 or j not in Q or not D.issubset(P1):
            raise InternalInconsistency("case 1 lifting identity failed")
        n = intersection(P1, Q).order
        return EscalationStep(CASE1, leg, D.order, i_bar, j_bar, i, j,
                              ((P1, Q, n),), conjugator=x)

    k_bar = _pick([y for y in involutions(Qg)
                   if Qg.commute(y, i_bar) and Qg.commute(y, j_bar)], rng)
    if k_bar is None:
        raise DichotomyFailure(
            f"{G.label}: involutions {G.name(i)}, {G.name(j)} modulo D are neither "
            "conjugate nor centralized by a common involution")
    k = bar.lift(k_bar)
    A = generate_subgroup(G, list(D.members) + [i, k])
    B = generate_subgroup(G, list(D.members) + [j, k])
    for S in (A, B):
        if not is_p_power(S.order, 2):
            raise NotTwoGroup(f"<D,i,k> / <D,j,k> has order {S.order}")
    Ri = extend_to_maximal_p_subgroup(G, A, 2)
    Rj = extend_to_maximal_p_subgroup(G, B, 2)
    pairs = []
    for X, Y in ((P, Ri), (Ri, Rj), (Rj, Q)):
        pairs.append((X, Y, intersection(X, Y).order))
    if any(n <= D.order for _, _, n in pairs):
        raise InternalInconsistency("case 2 chain failed to grow the intersection")
    return EscalationStep(CASE2, leg, D.order, i_bar, j_bar, i, j, tuple(pairs), k_bar=k_bar, k=k)


def find_conjugator(G: FiniteGroup, P: Subgroup, Q: Subgroup,
                    rng: Optional[random.Random] = None) -> ConjugatorTrace:
    """Return a trace whose final element g satisfies g P g⁻¹ = Q."""
    _require_sylow2(G, P, "P")
    _require_sylow2(G, Q, "Q")
    steps: list[EscalationStep] = []

    def solve(X: Subgroup, Y: Subgroup, leg: tuple) -> int:
        if X == Y:
            return 0
        step = escalation_step(G, X, Y, leg, rng)
        steps.append(step)
        if step.kind == CASE1:
            X1, Y1, _ = step.pairs[0]
            return G.mul(solve(X1, Y1, leg + (0,)), step.conjugator)
        g = 0
        for n, (X1, Y1, _) in enumerate(step.pairs):
            g = G.mul(solve(X1, Y1, leg + (n,)), g)
        return g

    g = solve(P, Q, ())
    trace = ConjugatorTrace(G, P, Q, tuple(steps), g)
    if not trace.verify():
        raise InternalInconsistency("composed conjugator does not map P onto Q")
    return trace


@dataclass(frozen=True)
class DichotomyReport:
    group: str
    involution_count: int
    pairs_checked: int
    witnesses: dict  # (g, h) -> ("conjugate", x) | ("common_involution", y)
    failures: tuple

    @property
    def ok(self) -> bool:
        return not self.failures

    def to_dict(self, G: FiniteGroup) -> dict:
        return {
            "group": self.group,
            "involutions": self.involution_count,
            "pairs_checked": self.pairs_checked,
            "conjugate_pairs": sum(1 for w in self.witnesses.values() if w[0] == "conjugate"),
            "common_involution_pairs": sum(1 for w in self.witnesses.values() if w[0] != "conjugate"),
            "failures": [[G.name(g), G.name(h)] for g, h in self.failures],
        }


def check_involution_dichotomy(G: FiniteGroup) -> DichotomyReport:
    """For each pair of distinct involutions: a conjugator or a common commuting involution."""
    invs = involutions(G)
    first_conj: dict[int, dict[int, int]] = {}
    for g in invs:
        seen: dict[int, int] = {}
        for x in range(G.order):
            seen.setdefault(G.conj(x, g), x)
        first_conj[g] = seen
    witnesses = {}
    failures = []
    pairs = 0
    for a, g in enumerate(invs):
        for h in invs[a + 1:]:
            pairs += 1
            if h in first_conj[g]:
                witnesses[(g, h)] = ("conjugate", first_conj[g][h])
                continue
            y = next((y for y in invs if G.commute(y, g) and G.commute(y, h)), None)
            if y is None:
                failures.append((g, h))
            else:
                witnesses[(g, h)] = ("common_involution", y)
    return DichotomyReport(G.label, len(invs), pairs, witnesses, tuple(failures))
