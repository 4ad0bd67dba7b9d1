"""
Recursive-descent parser for the expression grammar.

    expr   := term (('+'|'-') term)*
    term   := factor (('*'|'/') factor)*
    factor := '-'? base ('^' integer)?
    base   := number | variable | ident | ident '_{' int '.' int '}' | func '(' expr ')' | '(' expr ')'
    func   := 'sin' | 'cos' | 'exp' | 'ln'

Whitespace is insignificant and '#' starts a comment running to the end of the line.
Errors report the byte offset into the source text.
"""

from __future__ import annotations

import logging
import re
from dataclasses import dataclass

import sympy

from cubic_ode_invariants.core.expr import RESERVED_NAMES
from cubic_ode_invariants.core.expr import X
from cubic_ode_invariants.core.expr import Y
from cubic_ode_invariants.core.expr import Expr
from cubic_ode_invariants.core.expr import ExpressionError
from cubic_ode_invariants.core.expr import opaque

logger = logging.getLogger(__name__)

FUNCTIONS = {"sin": sympy.sin, "cos": sympy.cos, "exp": sympy.exp, "ln": sympy.log}
PLANE_VARIABLES = {"x": X, "y": Y}
TILDE_VARIABLES = {"xt": X, "yt": Y}

_TOKEN = re.compile(
    r"""
    (?P<space>\s+|\#[^\n]*)
  | (?P<index>_\{\s*(?P<p>\d+)\s*\.\s*(?P<q>\d+)\s*\})
  | (?P<decimal>\d+\.\d*|\.\d+)
  | (?P<number>\d+)
  | (?P<ident>[A-Za-z][A-Za-z0-9]*)
  | (?P<op>[-+*/^()])
    """,
    re.VERBOSE,
)


class ExpressionParseError(ExpressionError):
    """Raised when text does not conform to the expression grammar."""

    def __init__(self, message: str, offset: int, source: str | None = None, line: int | None = None):
        self.message = message
        self.offset = offset
        self.source = source
        self.line = line
        super().__init__(str(self))

    def __str__(self) -> str:
        where = f"{self.source}:" if self.source else ""
        if self.line is not None:
            where += f"{self.line}:"
        return f"{where}offset {self.offset}: {self.message}"


@dataclass(frozen=True)
class Token:
    kind: str
    text: str
    offset: int
    index: tuple[int, int] | None = None


def _byte_offset(text: str, position: int) -> int:
    return len(text[:position].encode("utf-8"))


def tokenize(text: str) -> list[Token]:
    """
    Split source text into tokens, dropping whitespace and comments.

    Raises:
        ExpressionParseError: On characters outside the grammar
    """
    tokens: list[Token] = []
    position = 0
    while position < len(text):
        match = _TOKEN.match(text, position)
        if match is None:
            character = text[position]
            hint = " (derivatives of y are not expressions)" if character == "'" else ""
            raise ExpressionParseError(f"unexpected character {character!r}{hint}", _byte_offset(text, position))
        kind = match.lastgroup
        if kind in ("p", "q"):
            kind = "index"
        offset = _byte_offset(text, position)
        if kind == "decimal":
            raise ExpressionParseError(f"decimal literal {match.group()!r} is not allowed; use a fraction", offset)
        if kind == "index":
            tokens.append(Token("index", match.group(), offset, (int(match.group("p")), int(match.group("q")))))
        elif kind != "space":
            tokens.append(Token(kind, match.group(), offset))
        position = match.end()
    tokens.append(Token("end", "", _byte_offset(text, len(text))))
    return tokens


class Parser:
    """
    Parser over one source string.

    Args:
        text: Source text
        variables: Names of the two plane variables and the symbols they map to
        allow_opaque: Whether other identifiers become opaque function symbols

    Example:
        >>> Parser("64*x^5 - 24").parse()
        64*x**5 - 24
    """

    def __init__(self, text: str, variables: dict[str, sympy.Symbol] | None = None, allow_opaque: bool = True):
        self._text = text
        self._variables = PLANE_VARIABLES if variables is None else variables
        self._allow_opaque = allow_opaque
        self._tokens = tokenize(text)
        self._position = 0

    @property
    def _current(self) -> Token:
        return self._tokens[self._position]

    def _advance(self) -> Token:
        token = self._tokens[self._position]
        self._position += 1
        return token

    def _accept(self, text: str) -> Token | None:
        if self._current.kind == "op" and self._current.text == text:
            return self._advance()
        return None

    def _expect(self, text: str) -> Token:
        token = self._accept(text)
        if token is None:
            raise self._error(f"expected {text!r}")
        return token

    def _error(self, message: str, token: Token | None = None) -> ExpressionParseError:
        token = token or self._current
        found = "end of input" if token.kind == "end" else repr(token.text)
        return ExpressionParseError(f"{message}, found {found}", token.offset)

    def parse(self) -> Expr:
        if self._current.kind == "end":
            raise self._error("empty expression")
        result = self._expression()
        if self._current.kind != "end":
            raise self._error("unexpected token")
        return result

    def _expression(self) -> Expr:
        result = self._term()
        while True:
            if self._accept("+"):
                result = result + self._term()
            elif self._accept("-"):
                result = result - self._term()
            else:
                return result

    def _term(self) -> Expr:
        result = self._factor()
        while True:
            if self._accept("*"):
                result = result * self._factor()
            elif token := self._accept("/"):
                divisor = self._factor()
                result = self._divide(result, divisor, token)
            else:
                return result

    def _divide(self, numerator: Expr, divisor: Expr, token: Token) -> Expr:
        if divisor.is_number:
            if divisor == 0:
                raise ExpressionParseError("division by zero", token.offset)
            return numerator / divisor
        # keep the quotient unevaluated so x/x still records its domain caveat
        return sympy.Mul(numerator, sympy.Pow(divisor, -1, evaluate=False), evaluate=False)

    def _factor(self) -> Expr:
        if self._accept("-"):
            return -self._power()
        return self._power()

    def _power(self) -> Expr:
        base = self._base()
        if self._accept("^"):
            exponent = self._exponent()
            return sympy.Pow(base, exponent)
        return base

    def _exponent(self) -> int:
        negative = self._accept("-") is not None
        token = self._current
        if token.kind != "number":
            raise self._error("exponent must be an integer literal")
        self._advance()
        value = -int(token.text) if negative else int(token.text)
        if self._accept("^"):
            tail = self._exponent()
            if tail < 0:
                raise ExpressionParseError("exponent must be an integer literal", token.offset)
            value = value**tail
        return value

    def _base(self) -> Expr:
        token = self._current
        if token.kind == "number":
            self._advance()
            return sympy.Integer(int(token.text))
        if token.kind == "ident":
            return self._identifier()
        if self._accept("("):
            inner = self._expression()
            self._expect(")")
            return inner
        raise self._error("expected a number, symbol or '('")

    def _identifier(self) -> Expr:
        token = self._advance()
        name = token.text
        if name in FUNCTIONS:
            if not self._accept("("):
                raise self._error(f"function {name!r} must be applied with '('")
            argument = self._expression()
            self._expect(")")
            return FUNCTIONS[name](argument)
        if self._current.kind == "op" and self._current.text == "(":
            raise ExpressionParseError(f"unknown function {name!r}", token.offset)
        index = (0, 0)
        if self._current.kind == "index":
            index = self._advance().index
        if name in self._variables:
            if index != (0, 0):
                raise ExpressionParseError(f"variable {name!r} cannot carry a derivative index", token.offset)
            return self._variables[name]
        if not self._allow_opaque or name in RESERVED_NAMES or name in PLANE_VARIABLES or name in TILDE_VARIABLES:
            raise ExpressionParseError(f"unknown symbol {name!r}", token.offset)
        return opaque(name, *index)


def parse(
    text: str, variables: dict[str, sympy.Symbol] | None = None, allow_opaque: bool = True
) -> Expr:
    """
    Parse text into an expression.

    Args:
        text: Source text in the expression grammar
        variables: Variable names to accept; defaults to ``x`` and ``y``
        allow_opaque: Whether other identifiers are opaque function symbols

    Returns:
        sympy expression

    Raises:
        ExpressionParseError: With the byte offset of the offending token

    Example:
        >>> parse("1 + x^2*y")
        x**2*y + 1
    """
    return Parser(text, variables, allow_opaque).parse()
