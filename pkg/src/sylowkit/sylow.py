"""Maximal p-subgroups of finite groups, with a brute-force oracle for small orders."""
from __future__ import annotations

from dataclasses import dataclass, asdict

from .errors import InternalInconsistency, NotPGroup, PreconditionError
from .groups import (
    FiniteGroup, Subgroup, _closure, conjugate_subgroup, element_order,
    find_subgroup_conjugator, is_p_power, p_part, trivial_subgroup,
)

EXHAUSTIVE_LIMIT = 300


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


def prime_divisors(n: int) -> list[int]:
    out, f = [], 2
    while f * f <= n:
        if n % f == 0:
            out.append(f)
            while n % f == 0:
                n //= f
        f += 1
    if n > 1:
        out.append(n)
    return out


def _small_generating_set(G: FiniteGroup, S: Subgroup) -> list[int]:
    gens: list[int] = []
    span = {0}
    for s in S.elements:
        if s not in span:
            gens.append(s)
            span = _closure(G, gens)
    return gens


@dataclass(frozen=True)
class SylowReport:
    group: str
    p: int
    sylow_order: int
    count: int
    count_mod_p: int
    all_conjugate: bool

    @property
    def ok(self) -> bool:
        return self.all_conjugate and self.count_mod_p == 1 % self.p

    def to_dict(self) -> dict:
        return asdict(self)


def extend_to_maximal_p_subgroup(G: FiniteGroup, S: Subgroup, p: int) -> Subgroup:
    """Greedily grow the p-subgroup S to a Sylow p-subgroup of G.

    Elements are tried in ascending id order; g is adjoined whenever <S, g>
    is still a p-group. A failed candidate can never succeed later (its
    closure only grows), so one pass suffices.
    """
    if not is_prime(p):
        raise PreconditionError(f"{p} is not prime")
    if not is_p_power(S.order, p):
        raise NotPGroup(f"subgroup of order {S.order} is not a {p}-group")
    target = p_part(G.order, p)
    gens = _small_generating_set(G, S)
    current = set(S.members)
    for g in range(G.order):
        if g in current:
            continue
        K = _closure(G, gens + [g], limit=target)
        if K is not None and is_p_power(len(K), p):
            gens.append(g)
            current = K
    if len(current) != target:
        raise InternalInconsistency(
            f"greedy extension stopped at order {len(current)}, expected {target}")
    return Subgroup(G, frozenset(current))


def exhaustive_maximal_p_subgroups(G: FiniteGroup, p: int) -> list[Subgroup]:
    """Every maximal p-subgroup, found without using Sylow's theorems.

    All p-subgroups are reached from the trivial group by adjoining one
    p-element at a time; the maximal ones are those admitting no extension.
    """
    target = p_part(G.order, p)
    p_elements = [g for g in range(1, G.order) if is_p_power(element_order(G, g), p)]
    found = {frozenset((0,)): ()}
    frontier = [frozenset((0,))]
    maximal = []
    while frontier:
        nxt = []
        for H in frontier:
            gens = found[H]
            extended = False
            for g in p_elements:
                if g in H:
                    continue
                K = _closure(G, gens + (g,), limit=target)
                if K is None or not is_p_power(len(K), p):
                    continue
                extended = True
                K = frozenset(K)
                if K not in found:
                    found[K] = gens + (g,)
                    nxt.append(K)
            if not extended:
                maximal.append(Subgroup(G, H))
        frontier = nxt
    return sorted(maximal, key=lambda s: s.elements)


def all_sylow_p(G: FiniteGroup, p: int, cross_check: bool = True) -> list[Subgroup]:
    """All Sylow p-subgroups, as the conjugation orbit of one of them.

    For |G| <= 300 the orbit is cross-checked against the exhaustive search
    when ``cross_check`` is set.
    """
    def compute():
        if G.order % p:
            return [trivial_subgroup(G)]
        P = extend_to_maximal_p_subgroup(G, trivial_subgroup(G), p)
        orbit = {conjugate_subgroup(P, g) for g in range(G.order)}
        return sorted(orbit, key=lambda s: s.elements)

    result = G.memo(("sylow", p), compute)
    if cross_check and G.order <= EXHAUSTIVE_LIMIT:
        brute = G.memo(("sylow-brute", p), lambda: exhaustive_maximal_p_subgroups(G, p))
        if brute != result:
            raise InternalInconsistency(
                f"{G.label}: conjugation orbit ({len(result)}) disagrees with exhaustive "
                f"search ({len(brute)}) for p={p}")
    return list(result)


def verify_sylow_theorems(G: FiniteGroup, p: int) -> SylowReport:
    """Count maximal p-subgroups by brute force and test conjugacy and n_p ≡ 1 (mod p)."""
    if not is_prime(p):
        raise PreconditionError(f"{p} is not prime")
    if G.order <= EXHAUSTIVE_LIMIT:
        subs = G.memo(("sylow-brute", p), lambda: exhaustive_maximal_p_subgroups(G, p))
    else:
        subs = all_sylow_p(G, p, cross_check=False)
    target = p_part(G.order, p)
    first = subs[0]
    all_conj = all(S.order == target for S in subs) and all(
        find_subgroup_conjugator(G, first, S) is not None for S in subs[1:])
    return SylowReport(G.label, p, target, len(subs), len(subs) % p, all_conj)
