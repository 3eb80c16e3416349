"""Exception hierarchy for the verification engine.

Every engine error derives from :class:`WresError` and from the builtin
exception a caller would naturally catch, so ``except ValueError`` style
handling in the tool layer keeps working.
"""

from __future__ import annotations

from typing import Optional


class WresError(Exception):
    """Base class for all engine errors."""


class DivisionByZeroError(WresError, ZeroDivisionError):
    """Exact division by a zero Gaussian rational or zero function."""


class UnsupportedPoleLocation(WresError, ValueError):
    """A rational function has a pole outside {+i, -i}."""


class NonDecayingIntegrand(WresError, ValueError):
    """A real-line reading was requested for a function that does not decay."""


class PoleAtEvaluationPoint(WresError, ValueError):
    """Evaluation or Taylor expansion was requested at a pole."""


class UnresolvedP0(WresError, ValueError):
    """A P0 letter survived into normal ordering or a trace."""


class UnsupportedDerivative(WresError, ValueError):
    """No boundary rule exists for the normal derivative of a symbol part."""


class UnknownFixture(WresError, KeyError):
    """Fixture id is not part of the loaded catalog."""


class UnknownCoefficient(WresError, KeyError):
    """Coefficient name is not part of the catalog."""


class UnknownTheorem(WresError, KeyError):
    """Theorem or case tag is not recognised."""


class FixtureFormatError(WresError, ValueError):
    """A fixture or printed-formula file line could not be parsed."""

    def __init__(self, message: str, source: str = "<string>", line: Optional[int] = None) -> None:
        self.source = source
        self.line = line
        where = source if line is None else f"{source}:{line}"
        super().__init__(f"{where}: {message}")


class ExpressionSyntaxError(WresError, SyntaxError):
    """Malformed expression text; ``offset`` is the 0-based byte offset."""

    def __init__(self, message: str, text: str, offset: int) -> None:
        super().__init__(message)
        self.msg = message
        self.text = text
        self.offset = offset

    def __str__(self) -> str:
        return f"{self.msg} at offset {self.offset}"
