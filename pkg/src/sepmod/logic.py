"""First-order formulas over the ordered catalog signatures.

Concrete syntax::

    formula  := unary ( 'and' unary )* ...       # precedence: not > and > or > implies
    unary    := 'not' unary | ('exists'|'forall') VAR unary | '(' formula ')' | atom
    atom     := term '<' term | term '=' term | P1(term) | P2(term)
    term     := VAR | c<i> | f(term) | @{payload}

``implies`` associates to the right, ``and``/``or`` to the left.  The printer
parenthesizes every compound operand of a binary connective, so printing and
re-parsing gives back the same tree.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterator, Mapping, Union

from .errors import ArityError, FormulaSyntaxError, SortError, UnknownSymbolError
from .points import POINT_TYPES, Point, parse_payload


@dataclass(frozen=True)
class Signature:
    name: str
    relations: tuple[tuple[str, int], ...]
    functions: tuple[tuple[str, int], ...] = ()
    constant_family: str | None = None  # symbol prefix of the indexed constants c_i

    def __post_init__(self):
        symbols = [s for s, _ in self.relations] + [s for s, _ in self.functions]
        if self.constant_family:
            symbols.append(self.constant_family)
        if len(set(symbols)) != len(symbols):
            raise ValueError(f"duplicate symbols in signature {self.name}")
        rels = dict(self.relations)
        if rels.get("<") != 2 or rels.get("=") != 2:
            raise ValueError("every signature carries < and = as binary relations")

    def relation_arity(self, symbol: str) -> int | None:
        return dict(self.relations).get(symbol)

    def function_arity(self, symbol: str) -> int | None:
        return dict(self.functions).get(symbol)

    @property
    def predicates(self) -> tuple[str, ...]:
        return tuple(s for s, k in self.relations if k == 1)


DLO_SIG = Signature("dlo", (("<", 2), ("=", 2)))
EHR_SIG = Signature("ehr", (("<", 2), ("=", 2)), constant_family="c")
EX1_SIG = Signature("ex1", (("<", 2), ("=", 2), ("P1", 1), ("P2", 1)), (("f", 1),))

SIGNATURES = {s.name: s for s in (DLO_SIG, EHR_SIG, EX1_SIG)}


# -- terms ------------------------------------------------------------------

@dataclass(frozen=True)
class Var:
    name: str


@dataclass(frozen=True)
class Const:
    index: int


@dataclass(frozen=True)
class Param:
    """A point injected as an opaque literal; never re-read from text."""

    point: Point


@dataclass(frozen=True)
class Apply:
    fn: str
    args: tuple


Term = Union[Var, Const, Param, Apply]


# -- formulas ---------------------------------------------------------------

@dataclass(frozen=True)
class Atom:
    rel: str  # "<" or "="
    args: tuple


@dataclass(frozen=True)
class PredicateAtom:
    pred: str
    term: Term


@dataclass(frozen=True)
class Not:
    body: "Formula"


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
class Exists:
    var: str
    body: "Formula"


@dataclass(frozen=True)
class Forall:
    var: str
    body: "Formula"


Formula = Union[Atom, PredicateAtom, Not, And, Or, Implies, Exists, Forall]
BINARY = (And, Or, Implies)
QUANTIFIERS = (Exists, Forall)


def lt(a: Term, b: Term) -> Atom:
    return Atom("<", (a, b))


def eq(a: Term, b: Term) -> Atom:
    return Atom("=", (a, b))


def conj(*parts: Formula) -> Formula:
    if not parts:
        raise ValueError("empty conjunction")
    out = parts[0]
    for p in parts[1:]:
        out = And(out, p)
    return out


def disj(*parts: Formula) -> Formula:
    if not parts:
        raise ValueError("empty disjunction")
    out = parts[0]
    for p in parts[1:]:
        out = Or(out, p)
    return out


def as_term(value) -> Term:
    if isinstance(value, (Var, Const, Param, Apply)):
        return value
    if isinstance(value, str):
        return Var(value)
    return Param(value)


# -- parsing ----------------------------------------------------------------

KEYWORDS = {"not", "and", "or", "implies", "exists", "forall"}

_TOKEN = re.compile(
    r"\s*(?:(?P<lit>@\{[^{}]*\})|(?P<id>[A-Za-z_][A-Za-z0-9_]*)|(?P<op>[()<=,]))"
)
_CONST = re.compile(r"c(\d+)\Z")  # c<i> is reserved for the constant family


def _tokenize(text: str) -> list[tuple[str, str, int]]:
    tokens = []
    pos = 0
    while True:
        while pos < len(text) and text[pos].isspace():
            pos += 1
        if pos >= len(text):
            break
        m = _TOKEN.match(text, pos)
        if not m:
            raise FormulaSyntaxError(f"unexpected character {text[pos]!r}", pos)
        kind = m.lastgroup
        tokens.append((kind, m.group(kind), m.start(kind)))
        pos = m.end()
    tokens.append(("eof", "", len(text)))
    return tokens


class _Parser:
    def __init__(self, text: str, sig: Signature):
        self.sig = sig
        self.tokens = _tokenize(text)
        self.i = 0

    def peek(self, offset=0):
        return self.tokens[min(self.i + offset, len(self.tokens) - 1)]

    def take(self):
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def expect(self, value: str):
        kind, val, pos = self.take()
        if val != value or kind == "lit":
            raise FormulaSyntaxError(f"expected {value!r}, found {val or 'end of input'!r}", pos)

    def at_keyword(self, word: str) -> bool:
        kind, val, _ = self.peek()
        return kind == "id" and val == word

    def parse(self) -> Formula:
        phi = self.formula()
        kind, val, pos = self.peek()
        if kind != "eof":
            raise FormulaSyntaxError(f"trailing input {val!r}", pos)
        return phi

    def formula(self) -> Formula:
        left = self.disjunction()
        if self.at_keyword("implies"):
            self.take()
            return Implies(left, self.formula())
        return left

    def disjunction(self) -> Formula:
        left = self.conjunction()
        while self.at_keyword("or"):
            self.take()
            left = Or(left, self.conjunction())
        return left

    def conjunction(self) -> Formula:
        left = self.unary()
        while self.at_keyword("and"):
            self.take()
            left = And(left, self.unary())
        return left

    def unary(self) -> Formula:
        kind, val, pos = self.peek()
        if kind == "id" and val == "not":
            self.take()
            return Not(self.unary())
        if kind == "id" and val in ("exists", "forall"):
            self.take()
            vkind, var, vpos = self.take()
            if vkind != "id" or var in KEYWORDS or self._is_symbol(var):
                raise FormulaSyntaxError(f"expected a variable after {val!r}", vpos)
            body = self.unary()
            return Exists(var, body) if val == "exists" else Forall(var, body)
        if kind == "op" and val == "(":
            self.take()
            inner = self.formula()
            self.expect(")")
            return inner
        return self.atom()

    def _is_symbol(self, name: str) -> bool:
        return (name[:1].isupper() or _CONST.match(name) is not None
                or self.sig.function_arity(name) is not None or name == "f")

    def atom(self) -> Formula:
        kind, val, pos = self.peek()
        if kind == "id" and val[:1].isupper():
            self.take()
            arity = self.sig.relation_arity(val)
            if arity is None or val in ("<", "="):
                raise UnknownSymbolError(f"unknown predicate {val!r} in signature {self.sig.name}")
            args = self.arguments()
            if len(args) != arity:
                raise ArityError(f"{val} takes {arity} argument(s), got {len(args)}")
            return PredicateAtom(val, args[0])
        left = self.term()
        kind, val, pos = self.take()
        if kind != "op" or val not in ("<", "="):
            raise FormulaSyntaxError(f"expected '<' or '=', found {val or 'end of input'!r}", pos)
        return Atom(val, (left, self.term()))

    def arguments(self) -> list:
        self.expect("(")
        args = [self.term()]
        while self.peek()[1] == "," and self.peek()[0] == "op":
            self.take()
            args.append(self.term())
        self.expect(")")
        return args

    def term(self) -> Term:
        kind, val, pos = self.take()
        if kind == "lit":
            return Param(parse_payload(val[2:-1], self.sig.name))
        if kind != "id" or val in KEYWORDS:
            raise FormulaSyntaxError(f"expected a term, found {val or 'end of input'!r}", pos)
        nxt = self.peek()
        if nxt[0] == "op" and nxt[1] == "(":
            arity = self.sig.function_arity(val)
            if arity is None:
                raise UnknownSymbolError(f"unknown function {val!r} in signature {self.sig.name}")
            args = self.arguments()
            if len(args) != arity:
                raise ArityError(f"{val} takes {arity} argument(s), got {len(args)}")
            return Apply(val, tuple(args))
        m = _CONST.match(val)
        if m:
            if self.sig.constant_family != "c":
                raise UnknownSymbolError(f"unknown constant {val!r} in signature {self.sig.name}")
            return Const(int(m.group(1)))
        if val[:1].isupper() or self.sig.function_arity(val) is not None:
            raise FormulaSyntaxError(f"symbol {val!r} used as a variable", pos)
        return Var(val)


def parse_formula(text: str, sig: Signature) -> Formula:
    """Parse ``text`` over ``sig``; raises on syntax errors, unknown symbols and arity mismatches."""
    return _Parser(text, sig).parse()


# -- printing ---------------------------------------------------------------

def format_term(t: Term) -> str:
    if isinstance(t, Var):
        return t.name
    if isinstance(t, Const):
        return f"c{t.index}"
    if isinstance(t, Param):
        return str(t.point)
    if isinstance(t, Apply):
        return f"{t.fn}({', '.join(format_term(a) for a in t.args)})"
    raise TypeError(f"not a term: {t!r}")


_CONNECTIVE = {And: "and", Or: "or", Implies: "implies"}


def format_formula(phi: Formula) -> str:
    if isinstance(phi, Atom):
        return f"{format_term(phi.args[0])} {phi.rel} {format_term(phi.args[1])}"
    if isinstance(phi, PredicateAtom):
        return f"{phi.pred}({format_term(phi.term)})"
    if isinstance(phi, Not):
        return f"not ({format_formula(phi.body)})"
    if isinstance(phi, BINARY):
        return f"{_operand(phi.left)} {_CONNECTIVE[type(phi)]} {_operand(phi.right)}"
    if isinstance(phi, Exists):
        return f"exists {phi.var} ({format_formula(phi.body)})"
    if isinstance(phi, Forall):
        return f"forall {phi.var} ({format_formula(phi.body)})"
    raise TypeError(f"not a formula: {phi!r}")


def _operand(phi: Formula) -> str:
    text = format_formula(phi)
    return f"({text})" if isinstance(phi, BINARY) else text


# -- structural queries -----------------------------------------------------

def _term_vars(t: Term, out: dict):
    if isinstance(t, Var):
        out.setdefault(t.name, None)
    elif isinstance(t, Apply):
        for a in t.args:
            _term_vars(a, out)


def free_variables(phi: Formula) -> tuple[str, ...]:
    """Variables with a free occurrence, in order of first occurrence."""
    out: dict = {}
    _free(phi, frozenset(), out)
    return tuple(out)


def _free(phi, bound, out):
    if isinstance(phi, Atom):
        for t in phi.args:
            found: dict = {}
            _term_vars(t, found)
            for v in found:
                if v not in bound:
                    out.setdefault(v, None)
    elif isinstance(phi, PredicateAtom):
        found = {}
        _term_vars(phi.term, found)
        for v in found:
            if v not in bound:
                out.setdefault(v, None)
    elif isinstance(phi, Not):
        _free(phi.body, bound, out)
    elif isinstance(phi, BINARY):
        _free(phi.left, bound, out)
        _free(phi.right, bound, out)
    elif isinstance(phi, QUANTIFIERS):
        _free(phi.body, bound | {phi.var}, out)
    else:
        raise TypeError(f"not a formula: {phi!r}")


def subterms(phi: Formula) -> Iterator[Term]:
    """Every term occurrence in ``phi``, including nested function arguments."""
    def walk_term(t):
        yield t
        if isinstance(t, Apply):
            for a in t.args:
                yield from walk_term(a)

    if isinstance(phi, Atom):
        for t in phi.args:
            yield from walk_term(t)
    elif isinstance(phi, PredicateAtom):
        yield from walk_term(phi.term)
    elif isinstance(phi, Not):
        yield from subterms(phi.body)
    elif isinstance(phi, BINARY):
        yield from subterms(phi.left)
        yield from subterms(phi.right)
    elif isinstance(phi, QUANTIFIERS):
        yield from subterms(phi.body)


def parameters(phi: Formula) -> list[Point]:
    """Parameter points of ``phi`` in first-occurrence order, without repeats."""
    seen: dict = {}
    for t in subterms(phi):
        if isinstance(t, Param):
            seen.setdefault(t.point, None)
    return list(seen)


def constants(phi: Formula) -> list[int]:
    return sorted({t.index for t in subterms(phi) if isinstance(t, Const)})


def quantifier_depth(phi: Formula) -> int:
    if isinstance(phi, (Atom, PredicateAtom)):
        return 0
    if isinstance(phi, Not):
        return quantifier_depth(phi.body)
    if isinstance(phi, BINARY):
        return max(quantifier_depth(phi.left), quantifier_depth(phi.right))
    return 1 + quantifier_depth(phi.body)


def size(phi: Formula) -> int:
    """Number of AST nodes, terms included."""
    def tsize(t):
        return 1 + sum(tsize(a) for a in t.args) if isinstance(t, Apply) else 1

    if isinstance(phi, Atom):
        return 1 + sum(tsize(t) for t in phi.args)
    if isinstance(phi, PredicateAtom):
        return 1 + tsize(phi.term)
    if isinstance(phi, Not):
        return 1 + size(phi.body)
    if isinstance(phi, BINARY):
        return 1 + size(phi.left) + size(phi.right)
    return 1 + size(phi.body)


# -- substitution -----------------------------------------------------------

def _subst_term(t: Term, binding: Mapping[str, Term]) -> Term:
    if isinstance(t, Var):
        return binding.get(t.name, t)
    if isinstance(t, Apply):
        return Apply(t.fn, tuple(_subst_term(a, binding) for a in t.args))
    return t


def substitute(phi: Formula, binding: Mapping[str, object]) -> Formula:
    """Replace free occurrences of the bound variables by parameter literals.

    Values are points (wrapped as :class:`Param`) or closed terms.  Binding a
    variable that is not free is a no-op.  Since the substituted terms carry no
    variables, no capture can occur and bound variables are never renamed.
    """
    terms = {v: as_term(p) for v, p in binding.items()}
    for v, t in terms.items():
        if isinstance(t, Var) or any(isinstance(s, Var) for s in _walk(t)):
            raise ValueError(f"substitution for {v!r} must be closed")
    return _subst(phi, terms) if terms else phi


def _walk(t):
    yield t
    if isinstance(t, Apply):
        for a in t.args:
            yield from _walk(a)


def _subst(phi, b):
    if isinstance(phi, Atom):
        return Atom(phi.rel, tuple(_subst_term(t, b) for t in phi.args))
    if isinstance(phi, PredicateAtom):
        return PredicateAtom(phi.pred, _subst_term(phi.term, b))
    if isinstance(phi, Not):
        return Not(_subst(phi.body, b))
    if isinstance(phi, BINARY):
        return type(phi)(_subst(phi.left, b), _subst(phi.right, b))
    if isinstance(phi, QUANTIFIERS):
        if phi.var in b:
            b = {k: v for k, v in b.items() if k != phi.var}
            if not b:
                return phi
        return type(phi)(phi.var, _subst(phi.body, b))
    raise TypeError(f"not a formula: {phi!r}")


# -- sort checking ----------------------------------------------------------

def check_formula(phi: Formula, sig: Signature) -> None:
    """Raise if ``phi`` uses symbols or parameter points foreign to ``sig``."""
    allowed = POINT_TYPES[sig.name]

    def check_term(t):
        if isinstance(t, Param):
            if not isinstance(t.point, allowed):
                raise SortError(f"{t.point!r} is not a point of {sig.name}")
        elif isinstance(t, Const):
            if sig.constant_family is None or t.index < 0:
                raise UnknownSymbolError(f"constant c{t.index} not in signature {sig.name}")
        elif isinstance(t, Apply):
            arity = sig.function_arity(t.fn)
            if arity is None:
                raise UnknownSymbolError(f"unknown function {t.fn!r}")
            if arity != len(t.args):
                raise ArityError(f"{t.fn} takes {arity} argument(s), got {len(t.args)}")
            for a in t.args:
                check_term(a)

    def go(f):
        if isinstance(f, Atom):
            if f.rel not in ("<", "=") or len(f.args) != 2:
                raise ArityError(f"bad atom {f!r}")
            for t in f.args:
                check_term(t)
        elif isinstance(f, PredicateAtom):
            if sig.relation_arity(f.pred) != 1:
                raise UnknownSymbolError(f"unknown predicate {f.pred!r}")
            check_term(f.term)
        elif isinstance(f, Not):
            go(f.body)
        elif isinstance(f, BINARY):
            go(f.left)
            go(f.right)
        elif isinstance(f, QUANTIFIERS):
            go(f.body)
        else:
            raise TypeError(f"not a formula: {f!r}")

    go(phi)
