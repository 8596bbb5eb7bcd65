"""First-order sentences in the language of groups, evaluated over finite groups.

Concrete syntax::

    A x . body        universal quantifier (A g, h . body binds both)
    E x . body        existential quantifier
    !  &  |  ->  <->  connectives, loosest last; -> is right-associative
    s = t, s != t     atoms
    x * y, x^-1, x^3, 1   terms

A quantifier body extends as far to the right as possible.
"""
from __future__ import annotations

import itertools
import re
import time
from dataclasses import dataclass, field
from pathlib import Path
from typing import Optional, Union

from .errors import FormulaSyntaxError, ResourceLimit, UnboundVariable
from .groups import FiniteGroup

DEFAULT_BUDGET = 10 ** 8


# -- AST ---------------------------------------------------------------------

@dataclass(frozen=True)
class Var:
    name: str


@dataclass(frozen=True)
class One:
    pass


@dataclass(frozen=True)
class Mul:
    left: "Term"
    right: "Term"


@dataclass(frozen=True)
class Inv:
    arg: "Term"


@dataclass(frozen=True)
class Pow:
    arg: "Term"
    exponent: int


Term = Union[Var, One, Mul, Inv, Pow]


@dataclass(frozen=True)
class Eq:
    left: Term
    right: Term


@dataclass(frozen=True)
class Not:
    arg: "Formula"


@dataclass(frozen=True)
class And:
    left: "Formula"
    right: "Formula"


@dataclass(frozen=True)
class Or:
    left: "Formula"
    right: "Formula"


@dataclass(frozen=True)
class Implies:
    left: "Formula"
    right: "Formula"


@dataclass(frozen=True)
class Iff:
    left: "Formula"
    right: "Formula"


@dataclass(frozen=True)
class Forall:
    var: str
    body: "Formula"


@dataclass(frozen=True)
class Exists:
    var: str
    body: "Formula"


Formula = Union[Eq, Not, And, Or, Implies, Iff, Forall, Exists]
_BINARY = {And: "&", Or: "|", Implies: "->", Iff: "<->"}


# -- printing ----------------------------------------------------------------

def format_term(t: Term) -> str:
    if isinstance(t, Var):
        return t.name
    if isinstance(t, One):
        return "1"
    if isinstance(t, Mul):
        right = format_term(t.right)
        if isinstance(t.right, Mul):
            right = f"({right})"
        return f"{format_term(t.left)} * {right}"
    base = format_term(t.arg)
    if isinstance(t.arg, (Mul, Inv, Pow)):
        base = f"({base})"
    return f"{base}^-1" if isinstance(t, Inv) else f"{base}^{t.exponent}"


def format_formula(f: Formula) -> str:
    """Fully parenthesized text; ``parse_formula(format_formula(f)) == f``."""
    if isinstance(f, Eq):
        return f"{format_term(f.left)} = {format_term(f.right)}"
    if isinstance(f, Not):
        if isinstance(f.arg, Eq):
            return f"{format_term(f.arg.left)} != {format_term(f.arg.right)}"
        return f"!({format_formula(f.arg)})"
    if isinstance(f, (Forall, Exists)):
        q = "A" if isinstance(f, Forall) else "E"
        return f"({q} {f.var} . {format_formula(f.body)})"
    return f"({format_formula(f.left)} {_BINARY[type(f)]} {format_formula(f.right)})"


# -- parsing -----------------------------------------------------------------

_TOKEN = re.compile(r"\s*(?:(<->|->|!=|[()*^=&|!.,\-])|([a-z][a-z0-9]*)|([AE])(?![a-zA-Z0-9])|(\d+))")


def _tokenize(text: str) -> list[tuple[str, str, int]]:
    tokens = []
    pos = 0
    while True:
        while pos < len(text) and text[pos].isspace():
            pos += 1
        if pos >= len(text):
            break
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            raise FormulaSyntaxError(f"unexpected character {text[pos]!r}", pos, text)
        start = m.start(m.lastindex)
        if m.group(1):
            tokens.append(("op", m.group(1), start))
        elif m.group(2):
            tokens.append(("var", m.group(2), start))
        elif m.group(3):
            tokens.append(("quant", m.group(3), start))
        else:
            tokens.append(("num", m.group(4), start))
        pos = m.end()
    tokens.append(("eof", "", len(text)))
    return tokens


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.tokens = _tokenize(text)
        self.i = 0

    def peek(self):
        return self.tokens[self.i]

    def error(self, msg: str):
        raise FormulaSyntaxError(msg, self.peek()[2], self.text)

    def accept(self, value: str) -> bool:
        kind, val, _ = self.peek()
        if kind in ("op", "quant") and val == value:
            self.i += 1
            return True
        return False

    def expect(self, value: str):
        if not self.accept(value):
            self.error(f"expected {value!r}, found {self.peek()[1] or 'end of input'!r}")

    # formulas

    def formula(self) -> Formula:
        left = self.implication()
        while self.accept("<->"):
            left = Iff(left, self.implication())
        return left

    def implication(self) -> Formula:
        left = self.disjunction()
        if self.accept("->"):
            return Implies(left, self.implication())
        return left

    def disjunction(self) -> Formula:
        left = self.conjunction()
        while self.accept("|"):
            left = Or(left, self.conjunction())
        return left

    def conjunction(self) -> Formula:
        left = self.unary()
        while self.accept("&"):
            left = And(left, self.unary())
        return left

    def unary(self) -> Formula:
        kind, val, _ = self.peek()
        if kind == "op" and val == "!":
            self.i += 1
            return Not(self.unary())
        if kind == "quant":
            self.i += 1
            names = [self.variable()]
            while self.accept(","):
                names.append(self.variable())
            self.expect(".")
            if self.peek()[0] == "eof":
                self.error("quantifier has no body")
            body = self.formula()
            node = Forall if val == "A" else Exists
            for name in reversed(names):
                body = node(name, body)
            return body
        if kind == "op" and val == "(":
            save = self.i
            self.i += 1
            try:
                inner = self.formula()
                self.expect(")")
                nxt = self.peek()
                if not (nxt[0] == "op" and nxt[1] in ("=", "!=", "*", "^")):
                    return inner
            except FormulaSyntaxError:
                pass
            self.i = save
        return self.atom()

    def variable(self) -> str:
        kind, val, _ = self.peek()
        if kind != "var":
            self.error("expected a variable name")
        self.i += 1
        return val

    def atom(self) -> Formula:
        left = self.term()
        if self.accept("="):
            return Eq(left, self.term())
        if self.accept("!="):
            return Not(Eq(left, self.term()))
        self.error("expected '=' or '!='")

    # terms

    def term(self) -> Term:
        left = self.factor()
        while self.accept("*"):
            left = Mul(left, self.factor())
        return left

    def factor(self) -> Term:
        base = self.base()
        while self.accept("^"):
            negative = self.accept("-")
            kind, val, _ = self.peek()
            if kind != "num":
                self.error("expected an integer exponent")
            self.i += 1
            k = int(val)
            if negative and k == 1:
                base = Inv(base)
            else:
                base = Pow(base, -k if negative else k)
        return base

    def base(self) -> Term:
        kind, val, _ = self.peek()
        if kind == "var":
            self.i += 1
            return Var(val)
        if kind == "num":
            if val != "1":
                self.error("the only constant is the identity 1")
            self.i += 1
            return One()
        if self.accept("("):
            t = self.term()
            self.expect(")")
            return t
        self.error(f"expected a term, found {val or 'end of input'!r}")


def free_variables(f) -> frozenset:
    if isinstance(f, Var):
        return frozenset((f.name,))
    if isinstance(f, One):
        return frozenset()
    if isinstance(f, (Inv, Pow, Not)):
        return free_variables(f.arg)
    if isinstance(f, (Forall, Exists)):
        return free_variables(f.body) - {f.var}
    return free_variables(f.left) | free_variables(f.right)


def parse_formula(text: str, sentence: bool = True) -> Formula:
    """Parse ``text``; with ``sentence`` set, free variables are rejected."""
    p = _Parser(text)
    if p.peek()[0] == "eof":
        p.error("empty formula")
    f = p.formula()
    if p.peek()[0] != "eof":
        p.error(f"unexpected {p.peek()[1]!r}")
    if sentence:
        free = free_variables(f)
        if free:
            raise UnboundVariable(f"free variables: {', '.join(sorted(free))}")
    return f


def load_formula_file(path) -> Formula:
    """One sentence per UTF-8 file; ``#`` starts a comment."""
    lines = Path(path).read_text(encoding="utf-8").splitlines()
    return parse_formula(" ".join(line.split("#", 1)[0] for line in lines))


def quantifier_depth(f) -> int:
    if isinstance(f, (Forall, Exists)):
        return 1 + quantifier_depth(f.body)
    if isinstance(f, Not):
        return quantifier_depth(f.arg)
    if isinstance(f, (And, Or, Implies, Iff)):
        return max(quantifier_depth(f.left), quantifier_depth(f.right))
    return 0


def push_negations(f: Formula) -> Formula:
    """Equivalent formula in negation normal form (no ->, <->; ! only on atoms)."""
    if isinstance(f, Eq):
        return f
    if isinstance(f, And):
        return And(push_negations(f.left), push_negations(f.right))
    if isinstance(f, Or):
        return Or(push_negations(f.left), push_negations(f.right))
    if isinstance(f, Implies):
        return Or(push_negations(Not(f.left)), push_negations(f.right))
    if isinstance(f, Iff):
        return push_negations(And(Implies(f.left, f.right), Implies(f.right, f.left)))
    if isinstance(f, Forall):
        return Forall(f.var, push_negations(f.body))
    if isinstance(f, Exists):
        return Exists(f.var, push_negations(f.body))
    g = f.arg  # negation
    if isinstance(g, Eq):
        return f
    if isinstance(g, Not):
        return push_negations(g.arg)
    if isinstance(g, And):
        return Or(push_negations(Not(g.left)), push_negations(Not(g.right)))
    if isinstance(g, Or):
        return And(push_negations(Not(g.left)), push_negations(Not(g.right)))
    if isinstance(g, Implies):
        return And(push_negations(g.left), push_negations(Not(g.right)))
    if isinstance(g, Iff):
        return push_negations(Or(And(g.left, Not(g.right)), And(Not(g.left), g.right)))
    if isinstance(g, Forall):
        return Exists(g.var, push_negations(Not(g.body)))
    return Forall(g.var, push_negations(Not(g.body)))


# -- evaluation --------------------------------------------------------------

def _compile_term(G: FiniteGroup, t: Term, scope: dict):
    if isinstance(t, Var):
        s = scope[t.name]
        return lambda env: env[s]
    if isinstance(t, One):
        return lambda env: 0
    if isinstance(t, Mul):
        l, r = _compile_term(G, t.left, scope), _compile_term(G, t.right, scope)
        table = G.table
        if table is not None:
            return lambda env: table[l(env)][r(env)]
        return lambda env: G.mul(l(env), r(env))
    a = _compile_term(G, t.arg, scope)
    if isinstance(t, Inv):
        inv = G._inverse
        return lambda env: inv[a(env)]
    k = t.exponent
    return lambda env: G.power(a(env), k)


def _compile(G: FiniteGroup, f: Formula, scope: dict, slots: list):
    if isinstance(f, Eq):
        l, r = _compile_term(G, f.left, scope), _compile_term(G, f.right, scope)
        return lambda env: l(env) == r(env)
    if isinstance(f, Not):
        a = _compile(G, f.arg, scope, slots)
        return lambda env: not a(env)
    if isinstance(f, (Forall, Exists)):
        s = len(slots)
        slots.append(f.var)
        body = _compile(G, f.body, {**scope, f.var: s}, slots)
        n = G.order
        if isinstance(f, Forall):
            def forall(env):
                for v in range(n):
                    env[s] = v
                    if not body(env):
                        return False
                return True
            return forall

        def exists(env):
            for v in range(n):
                env[s] = v
                if body(env):
                    return True
            return False
        return exists
    l, r = _compile(G, f.left, scope, slots), _compile(G, f.right, scope, slots)
    if isinstance(f, And):
        return lambda env: l(env) and r(env)
    if isinstance(f, Or):
        return lambda env: l(env) or r(env)
    if isinstance(f, Implies):
        return lambda env: (not l(env)) or r(env)
    return lambda env: l(env) == r(env)


@dataclass
class EvalReport:
    group: str
    sentence: str
    text: str
    truth: bool
    assignment: Optional[dict] = None  # variable -> element name
    assignment_kind: Optional[str] = None  # "witness" | "counterexample"
    elapsed: float = field(default=0.0, compare=False)

    def to_dict(self, timing: bool = False) -> dict:
        d = {
            "group": self.group, "sentence": self.sentence, "text": self.text,
            "truth": self.truth, "assignment": self.assignment,
            "assignment_kind": self.assignment_kind,
        }
        if timing:
            d["elapsed"] = self.elapsed
        return d


def evaluate(G: FiniteGroup, f: Formula, name: str = "", budget: int = DEFAULT_BUDGET) -> EvalReport:
    """Truth of sentence ``f`` in G by exhaustive quantifier expansion.

    When ``f`` opens with a block of like quantifiers, the least assignment
    (lexicographic in element ids) that decides it is reported: a
    counterexample for a false universal block, a witness for a true
    existential one.
    """
    free = free_variables(f)
    if free:
        raise UnboundVariable(f"free variables: {', '.join(sorted(free))}")
    depth = quantifier_depth(f)
    if G.order ** depth > budget:
        raise ResourceLimit(
            f"|G|^depth = {G.order}^{depth} exceeds the evaluation budget {budget}")
    start = time.perf_counter()
    block, body, kind = [], f, type(f)
    while isinstance(body, kind) and kind in (Forall, Exists):
        block.append(body.var)
        body = body.body
    slots: list = []
    scope = {}
    for v in block:
        scope[v] = len(slots)
        slots.append(v)
    compiled = _compile(G, body, scope, slots)
    env = [0] * max(1, len(slots))
    assignment = kind_name = None
    if not block:
        truth = bool(compiled(env))
    else:
        universal = kind is Forall
        truth = universal
        for values in itertools.product(range(G.order), repeat=len(block)):
            env[:len(block)] = values
            if bool(compiled(env)) != universal:
                truth = not universal
                assignment = {v: G.name(x) for v, x in zip(block, values)}
                kind_name = "counterexample" if universal else "witness"
                break
    return EvalReport(G.label, name, format_formula(f), truth, assignment, kind_name,
                      time.perf_counter() - start)


# -- built-in sentences ------------------------------------------------------

DICHOTOMY_TEXT = (
    "A g, h . ((g != 1 & h != 1) & (g^2 = 1 & h^2 = 1)) -> "
    "((E x . x^-1 * g * x = h) | "
    "(E y . y != 1 & y^2 = 1 & y^-1 * g * y = g & y^-1 * h * y = h))"
)

DOUBLING_TEXT = "(A x, y . x * x = y * y -> x = y) <-> (A y . E x . x * x = y)"


def cdim_le_text(c: int) -> str:
    """No strict chain of c+1 centralizer inclusions below G.

    A chain C(x1) > C(x1,x2) > ... exists iff there are witnesses y_i that
    commute with x1..x_{i-1} but not with x_i.
    """
    def link(i: int) -> str:
        parts = [f"y{i} * x{m} = x{m} * y{i}" for m in range(1, i)]
        parts.append(f"x{i} * y{i} != y{i} * x{i}")
        if i <= c:
            parts.append(link(i + 1))
        return f"(E x{i}, y{i} . " + " & ".join(parts) + ")"
    return f"!{link(1)}"


def builtin_sentences() -> dict[str, Formula]:
    out = {
        "dichotomy": parse_formula(DICHOTOMY_TEXT),
        "doubling": parse_formula(DOUBLING_TEXT),
    }
    for c in range(5):
        out[f"cdim_le({c})"] = parse_formula(cdim_le_text(c))
    return out
