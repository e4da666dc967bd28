"""Exception hierarchy shared by all modules"""

from typing import Iterable, Optional


class WronskiError(Exception):
    """Base class for every error raised by the toolkit"""


# Expressions

class ExpressionError(WronskiError):
    """Problem with an expression string"""


class ExpressionSyntaxError(ExpressionError):
    """Text does not match the expression grammar"""

    def __init__(self, message: str, offset: int, expected: Iterable[str] = ()):
        self.offset = offset
        self.expected = tuple(sorted(set(expected)))
        detail = f" (expected one of: {', '.join(self.expected)})" if self.expected else ""
        super().__init__(f"{message} at byte {offset}{detail}")


class UnknownFunctionError(ExpressionError):
    """Call to a function outside exp, log, sin, cos, sqrt"""

    def __init__(self, name: str, offset: int):
        self.name = name
        self.offset = offset
        super().__init__(f"Unknown function '{name}' at byte {offset}")


class DomainError(WronskiError, ValueError):
    """Expression not defined at the evaluation point"""


# Jets

class JetError(WronskiError):
    """Invalid jet arithmetic"""


class AnchorMismatch(JetError):
    """Jets anchored at different points were combined"""


class DivisionBySingular(JetError):
    """Jet division by a jet whose value is numerically zero"""


class NonFiniteJet(JetError):
    """A jet coefficient overflowed or became NaN"""


class SingularWronskian(DivisionBySingular):
    """Wronskian vanished where it is used as a divisor"""

    def __init__(self, x: float, message: Optional[str] = None):
        self.x = x
        super().__init__(message or f"Wronskian vanishes at x={x!r}")


# Quadrature / Hilbert space

class QuadratureError(WronskiError):
    """Numerical integration failed"""


class SubdivisionLimit(QuadratureError):
    """Adaptive quadrature did not converge within the subdivision budget"""


class NonFiniteIntegrand(QuadratureError):
    """Integrand returned inf or NaN"""


class ZeroNorm(WronskiError):
    """Function has (numerically) zero norm"""


# Construction

class DependentInput(WronskiError):
    """Gram-Schmidt input is linearly dependent"""

    def __init__(self, stage: int, message: Optional[str] = None):
        self.stage = stage
        super().__init__(message or f"Input function {stage} is dependent on its predecessors")


class BuildError(WronskiError):
    """A construction stage failed"""

    def __init__(self, stage: int, message: str):
        self.stage = stage
        super().__init__(f"stage {stage}: {message}")


class ConfigError(WronskiError):
    """Config document is invalid"""
