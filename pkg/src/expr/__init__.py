"""Closed-form expressions used for seeds, stage weights and measure weights"""

import logging
from dataclasses import dataclass, field

from src.expr import nodes
from src.expr.nodes import FUNCTIONS, BinOp, Call, Const, Node, Pow, Var
from src.expr.parser import parse_node
from src.jet import Jet

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class Expression:
    """Parsed formula in the single variable x"""

    root: Node
    source_text: str = field(compare=False)

    def eval_jet(self, x: float, order: int) -> Jet:
        """Derivatives f(x), f'(x), ..., f^(order)(x)"""
        if order < 0:
            raise ValueError("order must be nonnegative")
        return nodes.eval_jet(self.root, float(x), order)

    def value(self, x: float) -> float:
        return nodes.eval_value(self.root, float(x))

    def __call__(self, x: float) -> float:
        return self.value(x)

    def serialize(self) -> str:
        return nodes.serialize(self.root)

    def to_sexpr(self) -> str:
        return nodes.to_sexpr(self.root)

    @property
    def is_constant(self) -> bool:
        return isinstance(self.root, Const)

    def __str__(self) -> str:
        return self.source_text


def parse(text: str) -> Expression:
    expression = Expression(parse_node(text), text)
    logger.debug(f"Parsed {text!r} -> {expression.to_sexpr()}")
    return expression


def serialize(expression: Expression) -> str:
    return expression.serialize()


def eval_jet(expression: Expression, x: float, order: int) -> Jet:
    return expression.eval_jet(x, order)


__all__ = [
    "Expression",
    "FUNCTIONS",
    "BinOp",
    "Call",
    "Const",
    "Node",
    "Pow",
    "Var",
    "parse",
    "serialize",
    "eval_jet",
]
