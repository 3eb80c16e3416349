"""Exact coefficient field Q(i), generalized combinatorics and the numeric float type.

Everything here is immutable. :class:`GaussianRational` keeps both parts as
:class:`fractions.Fraction`, which already normalises signs into the numerator
and reduces by the gcd, so structural equality is mathematical equality.
"""

from __future__ import annotations

import math
import operator
from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Callable, Optional, Union

from mpmath import libmp, mp, mpc, mpf

from wres_verifier.errors import DivisionByZeroError

Scalar = Union[int, Fraction, "GaussianRational"]

MIN_PRECISION_BITS = 64


def _imag_text(value: Fraction) -> str:
    sign = "-" if value < 0 else ""
    magnitude = abs(value)
    core = "i" if magnitude.numerator == 1 else f"{magnitude.numerator}*i"
    if magnitude.denominator != 1:
        core += f"/{magnitude.denominator}"
    return sign + core


@dataclass(frozen=True, eq=False)
class GaussianRational:
    """Exact complex number ``re + im*i`` with rational parts."""

    re: Fraction = Fraction(0)
    im: Fraction = Fraction(0)

    def __post_init__(self) -> None:
        object.__setattr__(self, "re", Fraction(self.re))
        object.__setattr__(self, "im", Fraction(self.im))

    # --------------------------------------------------
    # Construction helpers
    # --------------------------------------------------

    @classmethod
    def coerce(cls, value: Any) -> Optional["GaussianRational"]:
        """Converts ints, fractions and Gaussian rationals; returns None otherwise."""
        if isinstance(value, GaussianRational):
            return value
        if isinstance(value, bool):
            return None
        if isinstance(value, (int, Fraction)):
            return cls(Fraction(value))
        return None

    @classmethod
    def of(cls, value: Scalar) -> "GaussianRational":
        """Like :meth:`coerce` but raises TypeError for unsupported values."""
        result = cls.coerce(value)
        if result is None:
            raise TypeError(f"Cannot convert {type(value).__name__} to GaussianRational")
        return result

    # --------------------------------------------------
    # Predicates
    # --------------------------------------------------

    def is_zero(self) -> bool:
        return self.re == 0 and self.im == 0

    def is_real(self) -> bool:
        return self.im == 0

    def is_integer(self) -> bool:
        return self.im == 0 and self.re.denominator == 1

    def __bool__(self) -> bool:
        return not self.is_zero()

    # --------------------------------------------------
    # Field operations
    # --------------------------------------------------

    def __add__(self, other: Any) -> "GaussianRational":
        o = GaussianRational.coerce(other)
        if o is None:
            return NotImplemented
        return GaussianRational(self.re + o.re, self.im + o.im)

    __radd__ = __add__

    def __sub__(self, other: Any) -> "GaussianRational":
        o = GaussianRational.coerce(other)
        if o is None:
            return NotImplemented
        return GaussianRational(self.re - o.re, self.im - o.im)

    def __rsub__(self, other: Any) -> "GaussianRational":
        o = GaussianRational.coerce(other)
        if o is None:
            return NotImplemented
        return o - self

    def __mul__(self, other: Any) -> "GaussianRational":
        o = GaussianRational.coerce(other)
        if o is None:
            return NotImplemented
        return GaussianRational(
            self.re * o.re - self.im * o.im,
            self.re * o.im + self.im * o.re,
        )

    __rmul__ = __mul__

    def __truediv__(self, other: Any) -> "GaussianRational":
        o = GaussianRational.coerce(other)
        if o is None:
            return NotImplemented
        return self * o.reciprocal()

    def __rtruediv__(self, other: Any) -> "GaussianRational":
        o = GaussianRational.coerce(other)
        if o is None:
            return NotImplemented
        return o * self.reciprocal()

    def __neg__(self) -> "GaussianRational":
        return GaussianRational(-self.re, -self.im)

    def __pos__(self) -> "GaussianRational":
        return self

    def __pow__(self, exponent: int) -> "GaussianRational":
        if isinstance(exponent, GaussianRational):
            if not exponent.is_integer():
                raise ValueError(f"Non-integer exponent {exponent}")
            exponent = int(exponent.re)
        if not isinstance(exponent, int):
            return NotImplemented
        if exponent < 0:
            return self.reciprocal() ** (-exponent)
        result = ONE
        base = self
        while exponent:
            if exponent & 1:
                result = result * base
            base = base * base
            exponent >>= 1
        return result

    def reciprocal(self) -> "GaussianRational":
        norm = self.abs2()
        if norm == 0:
            raise DivisionByZeroError("division by zero Gaussian rational")
        return GaussianRational(self.re / norm, -self.im / norm)

    def conjugate(self) -> "GaussianRational":
        return GaussianRational(self.re, -self.im)

    def abs2(self) -> Fraction:
        return self.re * self.re + self.im * self.im

    # --------------------------------------------------
    # Equality, hashing, text
    # --------------------------------------------------

    def __eq__(self, other: object) -> bool:
        o = GaussianRational.coerce(other)
        if o is None:
            return NotImplemented
        return self.re == o.re and self.im == o.im

    def __hash__(self) -> int:
        if self.im == 0:
            return hash(self.re)
        return hash((self.re, self.im))

    def __str__(self) -> str:
        if self.im == 0:
            return str(self.re)
        if self.re == 0:
            return _imag_text(self.im)
        if self.im > 0:
            return f"{self.re} + {_imag_text(self.im)}"
        return f"{self.re} - {_imag_text(-self.im)}"

    def __repr__(self) -> str:
        return f"GaussianRational({str(self)!r})"

    def sort_key(self) -> tuple[Fraction, Fraction]:
        return (self.re, self.im)

    def to_complex_float(self, precision_bits: int = 256) -> "BigComplexFloat":
        return BigComplexFloat.from_gaussian(self, precision_bits)


ZERO = GaussianRational(0)
ONE = GaussianRational(1)
I = GaussianRational(0, 1)

_OPS: dict[str, Callable[[Any, Any], Any]] = {
    "+": operator.add,
    "-": operator.sub,
    "−": operator.sub,
    "*": operator.mul,
    "×": operator.mul,
    "/": operator.truediv,
    "÷": operator.truediv,
}


def gaussian_arith(a: Scalar, b: Scalar, op: str) -> GaussianRational:
    """Applies one field operation exactly.

    Raises:
        ValueError: If ``op`` is not one of ``+ - * /``.
        DivisionByZeroError: On division by zero.
    """
    if op not in _OPS:
        raise ValueError(f"Unsupported operator '{op}'")
    return _OPS[op](GaussianRational.of(a), GaussianRational.of(b))


# --------------------------------------------------
# Generalized combinatorics
# --------------------------------------------------

def falling_factorial(n: int, k: int) -> Fraction:
    """Returns n(n-1)...(n-k+1); valid for negative ``n``, empty product for k=0."""
    if k < 0:
        raise ValueError("k must be non-negative")
    product = 1
    for j in range(k):
        product *= n - j
    return Fraction(product)


def binomial_general(n: int, k: int) -> Fraction:
    """Returns the falling-factorial binomial n(n-1)...(n-k+1)/k!."""
    return falling_factorial(n, k) / math.factorial(k)


def factorial(k: int) -> int:
    if k < 0:
        raise ValueError(f"factorial of negative integer {k}")
    return math.factorial(k)


# --------------------------------------------------
# Numeric oracle substrate
# --------------------------------------------------

def _rational_to_mpf(value: Fraction, precision_bits: int) -> mpf:
    # from_rational rounds once, so the conversion is correctly rounded
    raw = libmp.from_rational(value.numerator, value.denominator, precision_bits, libmp.round_nearest)
    return mp.make_mpf(raw)


@dataclass(frozen=True)
class BigComplexFloat:
    """Complex float with an explicit mantissa precision in bits."""

    re: mpf
    im: mpf
    precision_bits: int = 256

    def __post_init__(self) -> None:
        if self.precision_bits < MIN_PRECISION_BITS:
            raise ValueError(f"precision_bits must be >= {MIN_PRECISION_BITS}")

    @classmethod
    def from_gaussian(cls, value: Scalar, precision_bits: int = 256) -> "BigComplexFloat":
        value = GaussianRational.of(value)
        return cls(
            _rational_to_mpf(value.re, precision_bits),
            _rational_to_mpf(value.im, precision_bits),
            precision_bits,
        )

    @classmethod
    def from_mpc(cls, value: mpc, precision_bits: int) -> "BigComplexFloat":
        with mp.workprec(precision_bits):
            return cls(mpf(value.real), mpf(value.imag), precision_bits)

    def to_mpc(self) -> mpc:
        with mp.workprec(self.precision_bits):
            return mpc(self.re, self.im)

    def relative_error(self, exact: Scalar) -> mpf:
        """Relative distance to an exact value; absolute distance when it is zero."""
        with mp.workprec(self.precision_bits):
            target = BigComplexFloat.from_gaussian(exact, self.precision_bits).to_mpc()
            diff = abs(self.to_mpc() - target)
            size = abs(target)
            return diff / size if size else diff

    def __str__(self) -> str:
        digits = max(15, int(self.precision_bits * 0.30103) - 2)
        with mp.workprec(self.precision_bits):
            return mp.nstr(self.to_mpc(), digits)
