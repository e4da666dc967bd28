"""Recursive descent parser for the expression language.

Grammar::

    expr   := term (('+' | '-') term)*
    term   := factor (('*' | '/') factor)*
    factor := base ('^' integer)?
    base   := number | 'x' | func '(' expr ')' | '(' expr ')'
    func   := exp | log | sin | cos | sqrt

There is no unary minus and no implicit multiplication.
"""

import math
import re
from dataclasses import dataclass
from typing import List

from src.errors import ExpressionSyntaxError, UnknownFunctionError
from src.expr.nodes import FUNCTIONS, BinOp, Call, Const, Node, Pow, Var

_TOKEN_RE = re.compile(
    r"""
    (?P<ws>\s+)
  | (?P<number>(?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?)
  | (?P<name>[A-Za-z_][A-Za-z_0-9]*)
  | (?P<op>[-+*/^()])
    """,
    re.VERBOSE,
)

_BASE_START = ("number", "x", "(", *FUNCTIONS)


@dataclass(frozen=True)
class Token:
    kind: str  # number | name | op | eof
    text: str
    pos: int  # character offset


def tokenize(text: str) -> List[Token]:
    tokens = []
    pos = 0
    while pos < len(text):
        match = _TOKEN_RE.match(text, pos)
        if not match:
            raise ExpressionSyntaxError(
                f"Unexpected character {text[pos]!r}", _byte_offset(text, pos), _BASE_START
            )
        kind = match.lastgroup
        if kind != "ws":
            tokens.append(Token(kind, match.group(), pos))
        pos = match.end()
    tokens.append(Token("eof", "", len(text)))
    return tokens


def _byte_offset(text: str, pos: int) -> int:
    return len(text[:pos].encode("utf-8"))


class Parser:
    """Single-use parser over one source string"""

    def __init__(self, text: str):
        self.text = text
        self.tokens = tokenize(text)
        self.index = 0

    @property
    def current(self) -> Token:
        return self.tokens[self.index]

    def _advance(self) -> Token:
        token = self.current
        self.index += 1
        return token

    def _error(self, expected) -> ExpressionSyntaxError:
        token = self.current
        found = "end of input" if token.kind == "eof" else repr(token.text)
        return ExpressionSyntaxError(
            f"Unexpected {found}", _byte_offset(self.text, token.pos), expected
        )

    def _is_op(self, *ops: str) -> bool:
        return self.current.kind == "op" and self.current.text in ops

    def parse(self) -> Node:
        node = self.expr()
        if self.current.kind != "eof":
            raise self._error(("+", "-", "*", "/", "^", "end of input"))
        return node

    def expr(self) -> Node:
        node = self.term()
        while self._is_op("+", "-"):
            op = self._advance().text
            node = BinOp(op, node, self.term())
        return node

    def term(self) -> Node:
        node = self.factor()
        while self._is_op("*", "/"):
            op = self._advance().text
            node = BinOp(op, node, self.factor())
        return node

    def factor(self) -> Node:
        node = self.base()
        if self._is_op("^"):
            self._advance()
            token = self.current
            if token.kind != "number" or not token.text.isdigit():
                raise self._error(("integer",))
            self._advance()
            node = Pow(node, int(token.text))
        return node

    def base(self) -> Node:
        token = self.current
        if token.kind == "number":
            self._advance()
            value = float(token.text)
            if not math.isfinite(value):
                raise ExpressionSyntaxError(
                    f"Numeric literal {token.text!r} overflows",
                    _byte_offset(self.text, token.pos),
                )
            return Const(value)
        if token.kind == "name":
            if token.text == "x":
                self._advance()
                return Var()
            if token.text in FUNCTIONS:
                self._advance()
                self._expect("(")
                arg = self.expr()
                self._expect(")")
                return Call(token.text, arg)
            if self.tokens[self.index + 1].text == "(":
                raise UnknownFunctionError(token.text, _byte_offset(self.text, token.pos))
            raise self._error(_BASE_START)
        if self._is_op("("):
            self._advance()
            node = self.expr()
            self._expect(")")
            return node
        raise self._error(_BASE_START)

    def _expect(self, op: str):
        if not self._is_op(op):
            expected = (op,) if op == "(" else (op, "+", "-", "*", "/", "^")
            raise self._error(expected)
        self._advance()


def parse_node(text: str) -> Node:
    if not text or not text.strip():
        raise ExpressionSyntaxError("Empty expression", 0, _BASE_START)
    return Parser(text).parse()
