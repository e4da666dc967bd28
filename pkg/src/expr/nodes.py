"""AST node types for the expression language.

Nodes are frozen dataclasses, so two parses of the same text compare
equal and nodes can be shared between threads.
"""

import math
from dataclasses import dataclass
from typing import Union

from src.errors import DomainError
from src.jet import Jet, div as jet_div
from src.jet import elementary

FUNCTIONS = ("exp", "log", "sin", "cos", "sqrt")


@dataclass(frozen=True)
class Const:
    value: float


@dataclass(frozen=True)
class Var:
    name: str = "x"


@dataclass(frozen=True)
class BinOp:
    op: str  # one of + - * /
    left: "Node"
    right: "Node"


@dataclass(frozen=True)
class Pow:
    base: "Node"
    exponent: int


@dataclass(frozen=True)
class Call:
    func: str
    arg: "Node"


Node = Union[Const, Var, BinOp, Pow, Call]

_SEXPR_OPS = {"+": "add", "-": "sub", "*": "mul", "/": "div"}

_JET_FUNCS = {
    "exp": elementary.exp,
    "log": elementary.log,
    "sin": elementary.sin,
    "cos": elementary.cos,
    "sqrt": elementary.sqrt,
}


def format_number(value: float) -> str:
    if value.is_integer() and abs(value) < 1e16:
        return str(int(value))
    return repr(value)


def serialize(node: Node) -> str:
    """Fully parenthesized text that parses back to the same tree"""
    if isinstance(node, Const):
        return format_number(node.value)
    if isinstance(node, Var):
        return node.name
    if isinstance(node, BinOp):
        return f"({serialize(node.left)} {node.op} {serialize(node.right)})"
    if isinstance(node, Pow):
        base = serialize(node.base)
        if isinstance(node.base, Pow):
            base = f"({base})"
        return f"{base}^{node.exponent}"
    if isinstance(node, Call):
        return f"{node.func}({serialize(node.arg)})"
    raise TypeError(f"Unknown node {node!r}")


def to_sexpr(node: Node) -> str:
    if isinstance(node, Const):
        return format_number(node.value)
    if isinstance(node, Var):
        return node.name
    if isinstance(node, BinOp):
        return f"({_SEXPR_OPS[node.op]} {to_sexpr(node.left)} {to_sexpr(node.right)})"
    if isinstance(node, Pow):
        return f"(pow {to_sexpr(node.base)} {node.exponent})"
    if isinstance(node, Call):
        return f"({node.func} {to_sexpr(node.arg)})"
    raise TypeError(f"Unknown node {node!r}")


def eval_jet(node: Node, x: float, order: int) -> Jet:
    if isinstance(node, Const):
        return Jet.constant(x, node.value, order)
    if isinstance(node, Var):
        return Jet.variable(x, order)
    if isinstance(node, BinOp):
        left = eval_jet(node.left, x, order)
        right = eval_jet(node.right, x, order)
        if node.op == "+":
            return left + right
        if node.op == "-":
            return left - right
        if node.op == "*":
            return left * right
        if right.value == 0.0:
            raise DomainError(f"Division by zero at x={x!r}")
        return jet_div(left, right)
    if isinstance(node, Pow):
        return elementary.power(eval_jet(node.base, x, order), node.exponent)
    if isinstance(node, Call):
        return _JET_FUNCS[node.func](eval_jet(node.arg, x, order))
    raise TypeError(f"Unknown node {node!r}")


def eval_value(node: Node, x: float) -> float:
    """Plain float evaluation, same domain rules as :func:`eval_jet`"""
    if isinstance(node, Const):
        return node.value
    if isinstance(node, Var):
        return x
    if isinstance(node, BinOp):
        left = eval_value(node.left, x)
        right = eval_value(node.right, x)
        if node.op == "+":
            return left + right
        if node.op == "-":
            return left - right
        if node.op == "*":
            return left * right
        if right == 0.0:
            raise DomainError(f"Division by zero at x={x!r}")
        return left / right
    if isinstance(node, Pow):
        base = eval_value(node.base, x)
        try:
            return base ** node.exponent
        except OverflowError:
            raise DomainError(f"power overflow at x={x!r}")
    if isinstance(node, Call):
        arg = eval_value(node.arg, x)
        if node.func in ("log", "sqrt") and arg <= 0.0:
            raise DomainError(f"{node.func} of nonpositive value {arg!r} at x={x!r}")
        try:
            return getattr(math, node.func)(arg)
        except OverflowError:
            raise DomainError(f"{node.func} overflow at x={x!r}")
    raise TypeError(f"Unknown node {node!r}")
