"""Expression grammar shared by the CLI and the certificate loader.

    expr   := term (('+' | '-') term)*
    term   := ['+'|'-'] factor ('*' factor)*
    factor := atom ('^' natural | "'")*
    atom   := number | identifier | '(' expr ')'

Numbers are exact: integers, fractions p/q, and decimal literals (which are
rationals by fiat, never floats).  The postfix apostrophe is the involution.
Identifiers are bound by an evaluation context; 'i' and 'sqrt2' are bound in
every context.  Parse errors carry the offending position.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction

from .scalars import SQRT2, I, Scalar, parse_rational


class ExprError(ValueError):
    def __init__(self, message: str, position: int):
        super().__init__(f"{message} (at position {position})")
        self.position = position


# -- AST -------------------------------------------------------------------

@dataclass(frozen=True)
class Num:
    value: Fraction


@dataclass(frozen=True)
class Ident:
    name: str


@dataclass(frozen=True)
class Neg:
    arg: object


@dataclass(frozen=True)
class Add:
    left: object
    right: object


@dataclass(frozen=True)
class Sub:
    left: object
    right: object


@dataclass(frozen=True)
class Mul:
    left: object
    right: object


@dataclass(frozen=True)
class Pow:
    base: object
    exponent: int


@dataclass(frozen=True)
class Star:
    arg: object


_TOKEN = re.compile(r"""
    (?P<ws>\s+)
  | (?P<number>\d+(?:/\d+|\.\d+)?)
  | (?P<ident>[A-Za-z_][A-Za-z0-9_]*)
  | (?P<op>[-+*^'()])
""", re.VERBOSE)


def _tokenize(text: str):
    tokens = []
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            raise ExprError(f"unexpected character {text[pos]!r}", pos)
        if not m.group("ws"):
            kind = "number" if m.group("number") else ("ident" if m.group("ident") else "op")
            tokens.append((kind, m.group(0), pos))
        pos = m.end()
    tokens.append(("end", "", len(text)))
    return tokens


class _Parser:
    def __init__(self, text: str, forbid_decimals: bool = False):
        self.text = text
        self.tokens = _tokenize(text)
        self.index = 0
        self.forbid_decimals = forbid_decimals

    def peek(self):
        return self.tokens[self.index]

    def advance(self):
        tok = self.tokens[self.index]
        self.index += 1
        return tok

    def expect_op(self, op):
        kind, value, pos = self.peek()
        if kind != "op" or value != op:
            raise ExprError(f"expected {op!r}", pos)
        return self.advance()

    def parse(self):
        expr = self.expr()
        kind, value, pos = self.peek()
        if kind != "end":
            raise ExprError(f"unexpected trailing input {value!r}", pos)
        return expr

    def expr(self):
        node = self.term()
        while True:
            kind, value, _ = self.peek()
            if kind == "op" and value in "+-":
                self.advance()
                right = self.term()
                node = Add(node, right) if value == "+" else Sub(node, right)
            else:
                return node

    def term(self):
        kind, value, _ = self.peek()
        negate = False
        if kind == "op" and value in "+-":
            self.advance()
            negate = value == "-"
        node = self.factor()
        while True:
            kind, value, _ = self.peek()
            if kind == "op" and value == "*":
                self.advance()
                node = Mul(node, self.factor())
            else:
                break
        return Neg(node) if negate else node

    def factor(self):
        node = self.atom()
        while True:
            kind, value, pos = self.peek()
            if kind == "op" and value == "^":
                self.advance()
                kind2, value2, pos2 = self.peek()
                if kind2 != "number" or not value2.isdigit():
                    raise ExprError("exponent must be a natural number", pos2)
                self.advance()
                node = Pow(node, int(value2))
            elif kind == "op" and value == "'":
                self.advance()
                node = Star(node)
            else:
                return node

    def atom(self):
        kind, value, pos = self.peek()
        if kind == "number":
            self.advance()
            if self.forbid_decimals and "." in value:
                raise ExprError("decimal literals are forbidden in strict mode", pos)
            return Num(parse_rational(value))
        if kind == "ident":
            self.advance()
            return Ident(value)
        if kind == "op" and value == "(":
            self.advance()
            node = self.expr()
            self.expect_op(")")
            return node
        raise ExprError(f"expected a number, identifier or '(': got {value!r}", pos)


def parse(text: str, forbid_decimals: bool = False):
    """Parse text into an AST; raises ExprError with a position on failure."""
    return _Parser(text, forbid_decimals).parse()


# -- printing ----------------------------------------------------------------

_LEVEL_ADD, _LEVEL_MUL, _LEVEL_NEG, _LEVEL_POSTFIX = 1, 2, 3, 4


def _print(node, parent_level: int) -> str:
    if isinstance(node, Num):
        text, level = str(node.value), _LEVEL_POSTFIX
    elif isinstance(node, Ident):
        text, level = node.name, _LEVEL_POSTFIX
    elif isinstance(node, Add):
        text = f"{_print(node.left, _LEVEL_ADD)} + {_print(node.right, _LEVEL_MUL)}"
        level = _LEVEL_ADD
    elif isinstance(node, Sub):
        text = f"{_print(node.left, _LEVEL_ADD)} - {_print(node.right, _LEVEL_MUL)}"
        level = _LEVEL_ADD
    elif isinstance(node, Mul):
        text = f"{_print(node.left, _LEVEL_MUL)}*{_print(node.right, _LEVEL_NEG)}"
        level = _LEVEL_MUL
    elif isinstance(node, Neg):
        # a leading sign binds the whole product chain, so the argument may
        # print at product level, but a Neg inside a product needs parens
        text = f"-{_print(node.arg, _LEVEL_MUL)}"
        level = _LEVEL_ADD
    elif isinstance(node, Pow):
        text = f"{_print(node.base, _LEVEL_POSTFIX)}^{node.exponent}"
        level = _LEVEL_POSTFIX
    elif isinstance(node, Star):
        text = f"{_print(node.arg, _LEVEL_POSTFIX)}'"
        level = _LEVEL_POSTFIX
    else:
        raise TypeError(f"not an expression node: {node!r}")
    if level < parent_level:
        return f"({text})"
    return text


def to_text(node) -> str:
    return _print(node, _LEVEL_ADD)


# -- evaluation ---------------------------------------------------------------

@dataclass
class Context:
    """Identifier bindings plus the scalar embedding of one carrier algebra."""

    name: str
    env: dict
    embed: callable

    def lookup(self, ident: str):
        if ident in self.env:
            return self.env[ident]
        if ident == "i":
            return self.embed(I)
        if ident == "sqrt2":
            return self.embed(SQRT2)
        raise ExprError(f"unbound identifier {ident!r} in context {self.name}", 0)


def _star_value(v):
    if hasattr(v, "star"):
        return v.star()
    return v.conj()


def evaluate(node, context: Context):
    if isinstance(node, Num):
        return context.embed(Scalar.of(node.value))
    if isinstance(node, Ident):
        return context.lookup(node.name)
    if isinstance(node, Neg):
        return -evaluate(node.arg, context)
    if isinstance(node, Add):
        return evaluate(node.left, context) + evaluate(node.right, context)
    if isinstance(node, Sub):
        return evaluate(node.left, context) - evaluate(node.right, context)
    if isinstance(node, Mul):
        return evaluate(node.left, context) * evaluate(node.right, context)
    if isinstance(node, Pow):
        return evaluate(node.base, context) ** node.exponent
    if isinstance(node, Star):
        return _star_value(evaluate(node.arg, context))
    raise TypeError(f"not an expression node: {node!r}")


def parse_value(text: str, context: Context, forbid_decimals: bool = False):
    return evaluate(parse(text, forbid_decimals), context)


# -- bundled contexts -----------------------------------------------------------

def scalar_context() -> Context:
    return Context("scalar", {}, lambda s: s)


def weyl_ast_context() -> Context:
    from . import weyl
    return Context("weyl-ast",
                   {"a": weyl.gen_a(), "ast": weyl.gen_astar()},
                   weyl.WeylElement.scalar)


def weyl_xy_context() -> Context:
    from . import weyl
    return Context("weyl-xy",
                   {"X": weyl.x_elem(), "Y": weyl.y_elem()},
                   weyl.WeylElement.scalar)


def poly_context(algebra) -> Context:
    env = {name: algebra.gen(name) for name in algebra.generators}
    return Context(algebra.label, env, algebra.constant)


def nfield_context(field) -> Context:
    return Context(f"nfield({field.name})",
                   {field.name: field.generator()},
                   lambda s: field.rational(s.to_fraction()))


def cyclic_context(algebra) -> Context:
    theta = algebra.embed(algebra.field.generator())
    return Context("cyclic",
                   {"e": algebra.e(), algebra.field.name: theta},
                   lambda s: algebra.embed(algebra.field.rational(s.to_fraction())))


def context_by_name(name: str, **kwargs) -> Context:
    if name == "weyl-ast":
        return weyl_ast_context()
    if name == "weyl-xy":
        return weyl_xy_context()
    if name == "scalar":
        return scalar_context()
    if name.startswith("poly"):
        from .polyalg import PolyAlgebra
        inner = name[len("poly"):].strip("()")
        gens = [g.strip() for g in inner.split(",") if g.strip()]
        if not gens:
            raise ValueError("poly context needs at least one variable: poly(x,...)")
        if len(gens) == 2 and kwargs.get("conjugate_pair"):
            return poly_context(PolyAlgebra(gens, involution=[1, 0]))
        return poly_context(PolyAlgebra(gens))
    raise ValueError(f"unknown context {name!r}")
