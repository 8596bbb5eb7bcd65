"""Finite groups on dense element ids, plus the subgroup machinery built on them.

Every group stores its elements as integers ``0 .. order-1`` with ``0`` the
identity. Two backends exist:

* ``cayley``: an explicit multiplication table (used below 2**12 elements);
* ``permutation``: a materialized, lexicographically sorted list of
  permutations with products computed on demand (a table is still cached
  when the group is small enough).

Conjugation throughout is ``x -> g x g^-1`` and ``H^g = g H g^-1``.
"""
from __future__ import annotations

import itertools
import random
import re
from dataclasses import dataclass, field
from typing import Callable, Iterable, Optional, Sequence

from .errors import NotNormal, PreconditionError, ResourceLimit, InternalInconsistency

TABLE_LIMIT = 1 << 12
DEFAULT_MAX_CENTRALIZERS = 10_000
DEFAULT_MAX_SUBGROUPS = 1_000

Perm = tuple


def compose(p: Perm, q: Perm) -> Perm:
    """Return p∘q, i.e. apply q first, then p."""
    return tuple(p[i] for i in q)


def perm_inverse(p: Perm) -> Perm:
    inv = [0] * len(p)
    for i, pi in enumerate(p):
        inv[pi] = i
    return tuple(inv)


def cycle_notation(p: Perm) -> str:
    """1-based cycle notation, e.g. ``(1,2,3)(4,5)``; identity is ``()``."""
    seen = set()
    out = []
    for start in range(len(p)):
        if start in seen or p[start] == start:
            continue
        cyc = [start]
        seen.add(start)
        x = p[start]
        while x != start:
            cyc.append(x)
            seen.add(x)
            x = p[x]
        out.append("(" + ",".join(str(c + 1) for c in cyc) + ")")
    return "".join(out) or "()"


def perm_from_cycles(degree: int, *cycles: Sequence[int]) -> Perm:
    """Build a permutation from 1-based cycles: ``perm_from_cycles(4, (1, 2), (3, 4))``."""
    img = list(range(degree))
    for cyc in cycles:
        for a, b in zip(cyc, list(cyc[1:]) + [cyc[0]]):
            img[a - 1] = b - 1
    return tuple(img)


class FiniteGroup:
    """An enumerable finite group with identity ``0``.

    Instances are immutable once built; an internal memo dict caches derived
    subgroups (normalizers, quotients) and never changes observable results.
    """

    def __init__(self, table: Optional[list], inverse: list[int], label: str, *,
                 backend: str = "cayley", names: Optional[list[str]] = None,
                 degree: Optional[int] = None, generators: Sequence[Perm] = (),
                 elements: Optional[list[Perm]] = None):
        self.label = label
        self.backend = backend
        self.order = len(inverse)
        self.identity_id = 0
        self._table = table
        self._inverse = inverse
        self._names = names
        self.degree = degree
        self.generators = tuple(generators)
        self.elements = elements
        self._index = {p: i for i, p in enumerate(elements)} if elements is not None else None
        self._cache: dict = {}

    def __repr__(self):
        return f"FiniteGroup({self.label!r}, order={self.order}, backend={self.backend!r})"

    def __len__(self):
        return self.order

    # -- construction -------------------------------------------------------

    @classmethod
    def from_table(cls, table: Sequence[Sequence[int]], label: str,
                   names: Optional[list[str]] = None, check: bool = True) -> "FiniteGroup":
        n = len(table)
        tbl = [list(row) for row in table]
        if any(len(row) != n for row in tbl):
            raise PreconditionError("multiplication table must be square")
        if tbl[0] != list(range(n)) or [row[0] for row in tbl] != list(range(n)):
            raise PreconditionError("element 0 must be the two-sided identity")
        inverse = [-1] * n
        for a in range(n):
            row = tbl[a]
            for b in range(n):
                if row[b] == 0:
                    inverse[a] = b
                    break
        if -1 in inverse:
            raise PreconditionError("some element has no inverse")
        G = cls(tbl, inverse, label, names=names)
        if check:
            G.check_axioms()
        return G

    @classmethod
    def from_permutations(cls, generators: Sequence[Perm], degree: int, label: str,
                          check: bool = True, max_order: int = 10 ** 5) -> "FiniteGroup":
        gens = [tuple(g) for g in generators]
        ident = tuple(range(degree))
        for g in gens:
            if sorted(g) != list(ident):
                raise PreconditionError(f"not a permutation of degree {degree}: {g}")
        seen = {ident}
        queue = [ident]
        for x in queue:
            for s in gens:
                y = compose(x, s)
                if y not in seen:
                    seen.add(y)
                    queue.append(y)
                    if len(seen) > max_order:
                        raise ResourceLimit(f"permutation group exceeds {max_order} elements")
        elements = sorted(seen)
        index = {p: i for i, p in enumerate(elements)}
        inverse = [index[perm_inverse(p)] for p in elements]
        table = None
        if len(elements) < TABLE_LIMIT:
            table = [[index[compose(p, q)] for q in elements] for p in elements]
        G = cls(table, inverse, label, backend="permutation", degree=degree,
                generators=gens, elements=elements)
        if check:
            G.check_axioms()
        return G

    # -- arithmetic ---------------------------------------------------------

    @property
    def table(self) -> Optional[list]:
        return self._table

    def mul(self, a: int, b: int) -> int:
        if self._table is not None:
            return self._table[a][b]
        return self._index[compose(self.elements[a], self.elements[b])]

    def inv(self, a: int) -> int:
        return self._inverse[a]

    def power(self, g: int, k: int) -> int:
        if k < 0:
            g, k = self.inv(g), -k
        result, base = 0, g
        while k:
            if k & 1:
                result = self.mul(result, base)
            base = self.mul(base, base)
            k >>= 1
        return result

    def conj(self, g: int, x: int) -> int:
        """g x g^-1."""
        return self.mul(self.mul(g, x), self.inv(g))

    def commute(self, a: int, b: int) -> bool:
        return self.mul(a, b) == self.mul(b, a)

    def name(self, g: int) -> str:
        if self._names is not None:
            return self._names[g]
        if self.elements is not None:
            return cycle_notation(self.elements[g])
        return str(g)

    def id_of(self, item) -> int:
        """Element id of a permutation (0-based image tuple), cycle string or display name."""
        if self._index is not None and isinstance(item, tuple):
            return self._index[item]
        if self._names is not None and item in self._names:
            return self._names.index(item)
        if self._index is not None and isinstance(item, str):
            cycles = [[int(x) for x in c.split(",") if x.strip()]
                      for c in re.findall(r"\(([^()]*)\)", item) if c.strip()]
            perm = perm_from_cycles(self.degree, *cycles)
            if perm in self._index:
                return self._index[perm]
        raise KeyError(item)

    def is_abelian(self) -> bool:
        return all(self.commute(a, b) for a in range(self.order) for b in range(a + 1, self.order))

    # -- validation ---------------------------------------------------------

    def check_axioms(self, seed: int = 0) -> None:
        """Verify identity, inverses and associativity.

        Associativity is checked on all triples for order <= 64 and on 10**4
        seeded random triples above that.
        """
        n = self.order
        for a in range(n):
            if self.mul(0, a) != a or self.mul(a, 0) != a:
                raise InternalInconsistency(f"{self.label}: 0 is not an identity for {a}")
            ia = self.inv(a)
            if self.mul(a, ia) != 0 or self.mul(ia, a) != 0:
                raise InternalInconsistency(f"{self.label}: bad inverse for {a}")
        if n <= 64:
            triples: Iterable = itertools.product(range(n), repeat=3)
        else:
            rng = random.Random(seed)
            triples = ((rng.randrange(n), rng.randrange(n), rng.randrange(n)) for _ in range(10 ** 4))
        for a, b, c in triples:
            if self.mul(self.mul(a, b), c) != self.mul(a, self.mul(b, c)):
                raise InternalInconsistency(f"{self.label}: not associative at {(a, b, c)}")
        if self.elements is not None:
            if len(set(self.elements)) != n:
                raise InternalInconsistency(f"{self.label}: duplicate permutations")
            sample = range(n) if n <= 64 else random.Random(seed).sample(range(n), 64)
            for a in sample:
                for b in sample:
                    if compose(self.elements[a], self.elements[b]) not in self._index:
                        raise InternalInconsistency(f"{self.label}: element list not closed")

    def memo(self, key, compute: Callable):
        try:
            return self._cache[key]
        except KeyError:
            value = self._cache[key] = compute()
            return value


@dataclass(frozen=True, eq=False)
class Subgroup:
    """A closed set of element ids inside ``parent``."""

    parent: FiniteGroup
    members: frozenset

    def __eq__(self, other):
        if not isinstance(other, Subgroup):
            return NotImplemented
        return self.parent is other.parent and self.members == other.members

    def __hash__(self):
        return hash(self.members)

    def __contains__(self, g: int) -> bool:
        return g in self.members

    def __len__(self):
        return len(self.members)

    def __iter__(self):
        return iter(self.elements)

    def __repr__(self):
        return f"Subgroup(order={self.order}, of={self.parent.label!r})"

    @property
    def order(self) -> int:
        return len(self.members)

    @property
    def elements(self) -> tuple:
        return tuple(sorted(self.members))

    def issubset(self, other: "Subgroup") -> bool:
        return self.members <= other.members

    def check(self) -> None:
        """Closure, identity and inverse checks."""
        G = self.parent
        if 0 not in self.members:
            raise InternalInconsistency("subgroup lacks the identity")
        for a in self.members:
            if not 0 <= a < G.order:
                raise InternalInconsistency(f"element {a} not in parent")
            if G.inv(a) not in self.members:
                raise InternalInconsistency("subgroup not closed under inverses")
            for b in self.members:
                if G.mul(a, b) not in self.members:
                    raise InternalInconsistency("subgroup not closed under products")


def subgroup_of(G: FiniteGroup, members: Iterable[int]) -> Subgroup:
    """Wrap an explicit member set, rejecting sets that are not subgroups."""
    S = Subgroup(G, frozenset(members))
    try:
        S.check()
    except InternalInconsistency as exc:
        raise PreconditionError(f"not a subgroup of {G.label}: {exc}") from None
    return S


def trivial_subgroup(G: FiniteGroup) -> Subgroup:
    return Subgroup(G, frozenset((0,)))


def whole_group(G: FiniteGroup) -> Subgroup:
    return Subgroup(G, frozenset(range(G.order)))


def _closure(G: FiniteGroup, gens: Sequence[int], limit: Optional[int] = None) -> Optional[set]:
    """Elements of <gens>; returns None as soon as the size exceeds ``limit``."""
    gens = [g for g in dict.fromkeys(gens) if g != 0]
    seen = {0}
    queue = [0]
    table = G.table
    for x in queue:
        row = table[x] if table is not None else None
        for s in gens:
            y = row[s] if row is not None else G.mul(x, s)
            if y not in seen:
                seen.add(y)
                queue.append(y)
                if limit is not None and len(seen) > limit:
                    return None
    return seen


def generate_subgroup(G: FiniteGroup, gens: Iterable[int]) -> Subgroup:
    """Smallest subgroup containing ``gens`` (closure worklist)."""
    gens = list(gens)
    for g in gens:
        if not 0 <= g < G.order:
            raise PreconditionError(f"{g} is not an element of {G.label}")
    return Subgroup(G, frozenset(_closure(G, gens)))


def element_order(G: FiniteGroup, g: int) -> int:
    k, x = 1, g
    while x != 0:
        x = G.mul(x, g)
        k += 1
    return k


def involutions(G: FiniteGroup) -> list[int]:
    return [g for g in range(1, G.order) if G.mul(g, g) == 0]


def centralizer(G: FiniteGroup, S: Iterable[int]) -> Subgroup:
    S = list(S)
    return Subgroup(G, frozenset(g for g in range(G.order) if all(G.commute(g, s) for s in S)))


def center(G: FiniteGroup) -> Subgroup:
    return centralizer(G, range(G.order))


def conjugate_subgroup(H: Subgroup, g: int) -> Subgroup:
    """H^g = g H g^-1."""
    G = H.parent
    return Subgroup(G, frozenset(G.conj(g, h) for h in H.members))


def intersection(H: Subgroup, K: Subgroup) -> Subgroup:
    return Subgroup(H.parent, H.members & K.members)


def _normalizes(G: FiniteGroup, g: int, S: Subgroup) -> bool:
    gi = G.inv(g)
    mem = S.members
    for s in mem:
        if G.mul(G.mul(g, s), gi) not in mem:
            return False
    return True


def normalizer(G: FiniteGroup, S: Subgroup, within: Optional[Subgroup] = None) -> Subgroup:
    """N_G(S), or N_within(S) = N_G(S) ∩ within when ``within`` is given."""
    candidates = within.elements if within is not None else range(G.order)
    return Subgroup(G, frozenset(g for g in candidates if _normalizes(G, g, S)))


def is_normal(H: Subgroup, D: Subgroup) -> bool:
    return D.issubset(H) and all(_normalizes(H.parent, h, D) for h in H.members)


def find_subgroup_conjugator(G: FiniteGroup, P: Subgroup, Q: Subgroup) -> Optional[int]:
    """Least g with g P g^-1 = Q, by exhaustive scan; None if none exists."""
    if P.order != Q.order:
        return None
    qm = Q.members
    for g in range(G.order):
        gi = G.inv(g)
        if all(G.mul(G.mul(g, p), gi) in qm for p in P.members):
            return g
    return None


def is_p_power(n: int, p: int) -> bool:
    while n % p == 0:
        n //= p
    return n == 1


def p_part(n: int, p: int) -> int:
    q = 1
    while n % p == 0:
        n //= p
        q *= p
    return q


def is_p_subgroup(H: Subgroup, p: int) -> bool:
    """Every element of H has p-power order (equivalently |H| is a power of p)."""
    return is_p_power(H.order, p)


@dataclass(frozen=True, eq=False)
class QuotientGroup:
    """H/D realised as its own Cayley-table group.

    Quotient id ``q`` stands for the coset ``coset_reps[q] D``; representatives
    are the least element id of each coset, so the identity coset is id 0.
    """

    carrier: FiniteGroup
    numerator: Subgroup
    kernel: Subgroup
    coset_reps: tuple
    _project: dict = field(repr=False)

    def lift(self, q: int) -> int:
        return self.coset_reps[q]

    def project(self, h: int) -> int:
        return self._project[h]

    def image(self, S: Subgroup) -> frozenset:
        return frozenset(self._project[s] for s in S.members)

    def check(self) -> None:
        H, D = self.numerator, self.kernel
        if not is_normal(H, D):
            raise InternalInconsistency("kernel is not normal")
        if self.carrier.order * D.order != H.order:
            raise InternalInconsistency("quotient order mismatch")
        if len({self._project[r] for r in self.coset_reps}) != len(self.coset_reps):
            raise InternalInconsistency("coset representatives collide")
        for q in range(self.carrier.order):
            if self.project(self.lift(q)) != q:
                raise InternalInconsistency("lift/project is not the identity")


def quotient(H: Subgroup, D: Subgroup) -> QuotientGroup:
    """The quotient H/D; raises NotNormal unless D is a normal subgroup of H."""
    G = H.parent
    if not D.issubset(H):
        raise NotNormal("kernel is not contained in the numerator")
    for h in H.elements:
        if not _normalizes(G, h, D):
            raise NotNormal(f"element {G.name(h)} does not normalize the kernel")
    project: dict = {}
    reps: list[int] = []
    for h in H.elements:
        if h in project:
            continue
        q = len(reps)
        reps.append(h)
        for d in D.members:
            project[G.mul(h, d)] = q
    n = len(reps)
    table = [[project[G.mul(reps[a], reps[b])] for b in range(n)] for a in range(n)]
    names = [G.name(r) + "·D" if D.order > 1 else G.name(r) for r in reps]
    carrier = FiniteGroup.from_table(table, f"({H.order})/({D.order})", names=names, check=False)
    return QuotientGroup(carrier, H, D, tuple(reps), project)


def all_subgroups(G: FiniteGroup, max_subgroups: int = DEFAULT_MAX_SUBGROUPS) -> list[Subgroup]:
    """Every subgroup of G, by adjoining one cyclic subgroup at a time."""
    cyclic: dict = {}
    for g in range(G.order):
        cyclic.setdefault(frozenset(_closure(G, [g])), g)
    found = {frozenset((0,)): ()}
    frontier = [frozenset((0,))]
    while frontier:
        nxt = []
        for H in frontier:
            gens = found[H]
            for C, c in cyclic.items():
                if C <= H:
                    continue
                K = frozenset(_closure(G, gens + (c,)))
                if K not in found:
                    found[K] = gens + (c,)
                    nxt.append(K)
                    if len(found) > max_subgroups:
                        raise ResourceLimit(f"{G.label} has more than {max_subgroups} subgroups")
        frontier = nxt
    return sorted((Subgroup(G, m) for m in found), key=lambda s: (s.order, s.elements))


def check_normalizer_condition(G: FiniteGroup, max_subgroups: int = DEFAULT_MAX_SUBGROUPS) -> bool:
    """True iff every proper subgroup is strictly contained in its normalizer."""
    for H in all_subgroups(G, max_subgroups):
        if H.order == G.order:
            continue
        if normalizer(G, H).order == H.order:
            return False
    return True


def distinct_centralizers(G: FiniteGroup, max_centralizers: int = DEFAULT_MAX_CENTRALIZERS) -> list[int]:
    """All subset-centralizers as bitmasks: intersection closure of the C(g) plus G."""
    n = G.order
    full = (1 << n) - 1
    singles = set()
    for g in range(n):
        mask = 0
        for x in range(n):
            if G.commute(g, x):
                mask |= 1 << x
        singles.add(mask)
    found = {full} | singles
    frontier = list(found)
    singles = list(singles)
    while frontier:
        nxt = []
        for c in frontier:
            for s in singles:
                m = c & s
                if m not in found:
                    found.add(m)
                    nxt.append(m)
                    if len(found) > max_centralizers:
                        raise ResourceLimit(f"{G.label} has more than {max_centralizers} centralizers")
        frontier = nxt
    return sorted(found, key=lambda m: -bin(m).count("1"))


def centralizer_dimension(G: FiniteGroup, max_centralizers: int = DEFAULT_MAX_CENTRALIZERS) -> int:
    """Longest strict chain G = C(∅) > C(X1) > ... counted in strict inclusions."""
    cents = distinct_centralizers(G, max_centralizers)
    depth: dict[int, int] = {}
    for c in cents:  # descending size, so supersets come first
        best = 0
        for d, dd in depth.items():
            if d != c and c & d == c and dd + 1 > best:
                best = dd + 1
        depth[c] = best
    return max(depth.values())
