"""Named finite groups and the bounded corpus used for corpus-wide checks.

Group names follow a small grammar: factors ``C<n>`` (cyclic), ``D<n>``
(dihedral of order n), ``S<n>``, ``A<n>`` and ``Q8``, joined by ``x`` for
direct products, e.g. ``"S3xC2"`` or ``"C2xC2xC2"``.
"""
from __future__ import annotations

import re
from functools import lru_cache
from typing import Iterator

from .errors import PreconditionError
from .groups import FiniteGroup, perm_from_cycles

NAME_GRAMMAR = "NAME := FACTOR ('x' FACTOR)* ; FACTOR := C<n> | D<2m> | S<n> | A<n> | Q8"

_FACTOR = re.compile(r"^(?:(C|D|S|A)(\d+)|(Q8))$")


def cyclic(n: int) -> FiniteGroup:
    if n < 1:
        raise PreconditionError("cyclic group needs n >= 1")
    table = [[(a + b) % n for b in range(n)] for a in range(n)]
    names = ["1"] + [f"g^{k}" if k > 1 else "g" for k in range(1, n)]
    return FiniteGroup.from_table(table, f"C{n}", names=names, check=n <= 64)


def dihedral(order: int) -> FiniteGroup:
    """Dihedral group of the given (even, >= 4) order, as r^k s^e with id k + m*e."""
    if order < 4 or order % 2:
        raise PreconditionError("dihedral group order must be even and >= 4")
    m = order // 2

    def mul(x, y):
        k1, e1 = x % m, x // m
        k2, e2 = y % m, y // m
        k = (k1 + (-k2 if e1 else k2)) % m
        return k + m * ((e1 + e2) % 2)

    table = [[mul(x, y) for y in range(order)] for x in range(order)]
    names = []
    for x in range(order):
        k, e = x % m, x // m
        r = "" if k == 0 else ("r" if k == 1 else f"r^{k}")
        s = "s" if e else ""
        names.append(r + s or "1")
    return FiniteGroup.from_table(table, f"D{order}", names=names, check=order <= 64)


def symmetric(n: int) -> FiniteGroup:
    if n < 1:
        raise PreconditionError("symmetric group needs n >= 1")
    gens = []
    if n >= 2:
        gens = [perm_from_cycles(n, (1, 2)), perm_from_cycles(n, tuple(range(1, n + 1)))]
    return FiniteGroup.from_permutations(gens, n, f"S{n}")


def alternating(n: int) -> FiniteGroup:
    if n < 1:
        raise PreconditionError("alternating group needs n >= 1")
    gens = [perm_from_cycles(n, (1, 2, k)) for k in range(3, n + 1)]
    return FiniteGroup.from_permutations(gens, n, f"A{n}")


_QUAT_UNITS = ["1", "i", "j", "k"]
# unit products: (sign, unit) for units[a] * units[b]
_QUAT_MUL = {
    ("1", "1"): (1, "1"), ("1", "i"): (1, "i"), ("1", "j"): (1, "j"), ("1", "k"): (1, "k"),
    ("i", "1"): (1, "i"), ("i", "i"): (-1, "1"), ("i", "j"): (1, "k"), ("i", "k"): (-1, "j"),
    ("j", "1"): (1, "j"), ("j", "i"): (-1, "k"), ("j", "j"): (-1, "1"), ("j", "k"): (1, "i"),
    ("k", "1"): (1, "k"), ("k", "i"): (1, "j"), ("k", "j"): (-1, "i"), ("k", "k"): (-1, "1"),
}


def quaternion8() -> FiniteGroup:
    """Q8 with element order 1, -1, i, -i, j, -j, k, -k."""
    elems = [(s, u) for u in _QUAT_UNITS for s in (1, -1)]
    names = [("" if s > 0 else "-") + u for s, u in elems]
    index = {e: n for n, e in enumerate(elems)}

    def mul(x, y):
        (s1, u1), (s2, u2) = elems[x], elems[y]
        s, u = _QUAT_MUL[(u1, u2)]
        return index[(s1 * s2 * s, u)]

    table = [[mul(x, y) for y in range(8)] for x in range(8)]
    return FiniteGroup.from_table(table, "Q8", names=names)


def direct_product(G: FiniteGroup, H: FiniteGroup) -> FiniteGroup:
    """G x H with element (g, h) at id g*|H| + h."""
    m = H.order
    n = G.order * m
    table = [[G.mul(a // m, b // m) * m + H.mul(a % m, b % m) for b in range(n)] for a in range(n)]
    names = [f"({G.name(a // m)},{H.name(a % m)})" for a in range(n)]
    return FiniteGroup.from_table(table, f"{G.label}x{H.label}", names=names, check=n <= 64)


def _factor(token: str) -> FiniteGroup:
    m = _FACTOR.match(token)
    if not m:
        raise PreconditionError(f"unknown group factor {token!r}; grammar: {NAME_GRAMMAR}")
    if m.group(3):
        return quaternion8()
    kind, n = m.group(1), int(m.group(2))
    return {"C": cyclic, "D": dihedral, "S": symmetric, "A": alternating}[kind](n)


@lru_cache(maxsize=None)
def group_by_name(name: str) -> FiniteGroup:
    """Build (and memoize) a group from its name, e.g. ``"S3xC2"``."""
    tokens = name.strip().split("x")
    if not tokens or not all(tokens):
        raise PreconditionError(f"malformed group name {name!r}; grammar: {NAME_GRAMMAR}")
    G = _factor(tokens[0])
    for tok in tokens[1:]:
        G = direct_product(G, _factor(tok))
    G.label = name.strip()
    return G


PRODUCT_NAMES = (
    "C2xC2", "C2xC4", "C4xC4", "C2xC2xC2", "C2xC6", "C3xC3", "C3xC6",
    "S3xC2", "S3xC3", "S3xS3", "S3xC4", "D8xC2", "D8xC3", "Q8xC2", "Q8xC3",
    "A4xC2", "A4xC3", "S4xC2", "D10xC2", "D12xC2", "A5xC2", "C2xC2xC3",
)


def _order_of(name: str) -> int:
    total = 1
    for tok in name.split("x"):
        m = _FACTOR.match(tok)
        if m.group(3):
            total *= 8
            continue
        kind, n = m.group(1), int(m.group(2))
        if kind in "CD":
            total *= n
        else:
            f = 1
            for k in range(2, n + 1):
                f *= k
            total *= f if kind == "S" else max(1, f // 2)
    return total


def corpus_names(max_order: int = 200) -> list[str]:
    """Names of every corpus group of order <= max_order."""
    names = [f"C{n}" for n in range(1, max_order + 1)]
    names += [f"D{n}" for n in range(4, max_order + 1, 2)]
    names += ["Q8"] if max_order >= 8 else []
    names += [f"S{n}" for n in range(2, 6)] + [f"A{n}" for n in range(3, 6)]
    names += list(PRODUCT_NAMES)
    return [n for n in names if _order_of(n) <= max_order]


def corpus(max_order: int = 200) -> Iterator[FiniteGroup]:
    for name in corpus_names(max_order):
        yield group_by_name(name)
