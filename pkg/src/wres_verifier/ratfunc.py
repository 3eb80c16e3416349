"""Univariate rational functions of xi_n over Q(i).

A :class:`RatFuncXi` is ``scale * numerator / prod (xi - root)^mult`` with the
denominator kept factored. Every pole in this domain sits at +i or -i, so the
factorisation is known by construction and never recovered by root finding.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Any, Iterable, Iterator, NamedTuple, Optional, Union

from mpmath import mp, mpc, mpf

from wres_verifier.arith import (
    I,
    ONE,
    ZERO,
    BigComplexFloat,
    GaussianRational,
    MIN_PRECISION_BITS,
    binomial_general,
    factorial,
)
from wres_verifier.errors import (
    DivisionByZeroError,
    NonDecayingIntegrand,
    PoleAtEvaluationPoint,
    UnsupportedPoleLocation,
)

logger = logging.getLogger("wres_verifier.ratfunc")

BOUNDARY_ROOTS = (I, -I)
MIN_NODES = 16


# --------------------------------------------------
# Polynomials
# --------------------------------------------------

@dataclass(frozen=True)
class PolyXi:
    """Polynomial in xi_n, coefficients in ascending degree."""

    coefficients: tuple[GaussianRational, ...] = ()

    def __post_init__(self) -> None:
        coeffs = [GaussianRational.of(c) for c in self.coefficients]
        while coeffs and coeffs[-1].is_zero():
            coeffs.pop()
        object.__setattr__(self, "coefficients", tuple(coeffs))

    @classmethod
    def constant(cls, value: Any) -> "PolyXi":
        return cls((GaussianRational.of(value),))

    @classmethod
    def xi(cls) -> "PolyXi":
        return cls((ZERO, ONE))

    @classmethod
    def linear(cls, root: Any) -> "PolyXi":
        """Returns ``xi - root``."""
        return cls((-GaussianRational.of(root), ONE))

    @property
    def degree(self) -> int:
        return len(self.coefficients) - 1

    @property
    def leading(self) -> GaussianRational:
        return self.coefficients[-1] if self.coefficients else ZERO

    def is_zero(self) -> bool:
        return not self.coefficients

    def coefficient(self, k: int) -> GaussianRational:
        return self.coefficients[k] if 0 <= k < len(self.coefficients) else ZERO

    def __add__(self, other: "PolyXi") -> "PolyXi":
        size = max(len(self.coefficients), len(other.coefficients))
        return PolyXi(tuple(self.coefficient(k) + other.coefficient(k) for k in range(size)))

    def __neg__(self) -> "PolyXi":
        return PolyXi(tuple(-c for c in self.coefficients))

    def __sub__(self, other: "PolyXi") -> "PolyXi":
        return self + (-other)

    def __mul__(self, other: Union["PolyXi", Any]) -> "PolyXi":
        if not isinstance(other, PolyXi):
            return self.scale(other)
        if self.is_zero() or other.is_zero():
            return PolyXi()
        out = [ZERO] * (len(self.coefficients) + len(other.coefficients) - 1)
        for a_idx, a in enumerate(self.coefficients):
            if a.is_zero():
                continue
            for b_idx, b in enumerate(other.coefficients):
                out[a_idx + b_idx] = out[a_idx + b_idx] + a * b
        return PolyXi(tuple(out))

    def scale(self, factor: Any) -> "PolyXi":
        factor = GaussianRational.of(factor)
        return PolyXi(tuple(c * factor for c in self.coefficients))

    def __pow__(self, exponent: int) -> "PolyXi":
        result = PolyXi.constant(1)
        for _ in range(exponent):
            result = result * self
        return result

    def __call__(self, point: Any) -> GaussianRational:
        point = GaussianRational.of(point)
        acc = ZERO
        for c in reversed(self.coefficients):
            acc = acc * point + c
        return acc

    def derivative(self) -> "PolyXi":
        return PolyXi(tuple(c * k for k, c in enumerate(self.coefficients) if k > 0))

    def monic(self) -> "PolyXi":
        return self.scale(self.leading.reciprocal())

    def synthetic_divide(self, root: Any) -> tuple["PolyXi", GaussianRational]:
        """Divides by ``xi - root``; returns (quotient, remainder)."""
        root = GaussianRational.of(root)
        if self.is_zero():
            return PolyXi(), ZERO
        acc = ZERO
        quotient: list[GaussianRational] = []
        for c in reversed(self.coefficients):
            acc = acc * root + c
            quotient.append(acc)
        remainder = quotient.pop()
        return PolyXi(tuple(reversed(quotient))), remainder

    def divmod(self, divisor: "PolyXi") -> tuple["PolyXi", "PolyXi"]:
        if divisor.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        remainder = list(self.coefficients)
        shift = len(remainder) - len(divisor.coefficients)
        if shift < 0:
            return PolyXi(), self
        quotient = [ZERO] * (shift + 1)
        inv_lead = divisor.leading.reciprocal()
        for k in range(shift, -1, -1):
            factor = remainder[k + divisor.degree] * inv_lead
            quotient[k] = factor
            if factor.is_zero():
                continue
            for j, d in enumerate(divisor.coefficients):
                remainder[k + j] = remainder[k + j] - factor * d
        return PolyXi(tuple(quotient)), PolyXi(tuple(remainder))

    def shift(self, point: Any) -> "PolyXi":
        """Returns p(point + t) as a polynomial in t."""
        moved = PolyXi((GaussianRational.of(point), ONE))
        acc = PolyXi()
        for c in reversed(self.coefficients):
            acc = acc * moved + PolyXi.constant(c)
        return acc


# --------------------------------------------------
# Rational functions
# --------------------------------------------------

Pole = tuple[GaussianRational, int]


def _root_key(pole: Pole) -> tuple:
    return pole[0].sort_key()


@dataclass(frozen=True)
class RatFuncXi:
    """Rational function ``scale * numerator / prod (xi - root)^mult`` in canonical form.

    Canonical form: numerator monic, common factors cancelled, poles sorted by
    root, distinct roots with positive multiplicity. The zero function has
    scale 0, numerator 1 and no poles. Non-positive multiplicities passed to
    the constructor are moved into the numerator.
    """

    numerator: PolyXi = PolyXi((ONE,))
    poles: tuple[Pole, ...] = ()
    scale: GaussianRational = ONE

    def __post_init__(self) -> None:
        numerator = self.numerator if isinstance(self.numerator, PolyXi) else PolyXi(tuple(self.numerator))
        scale = GaussianRational.of(self.scale)
        if scale.is_zero() or numerator.is_zero():
            object.__setattr__(self, "numerator", PolyXi((ONE,)))
            object.__setattr__(self, "poles", ())
            object.__setattr__(self, "scale", ZERO)
            return

        mults: dict[GaussianRational, int] = {}
        for root, mult in self.poles:
            root = GaussianRational.of(root)
            mults[root] = mults.get(root, 0) + int(mult)
        for root, mult in list(mults.items()):
            if mult < 0:
                numerator = numerator * (PolyXi.linear(root) ** (-mult))
                mults[root] = 0

        scale = scale * numerator.leading
        numerator = numerator.monic()
        for root in mults:
            while mults[root] > 0:
                quotient, remainder = numerator.synthetic_divide(root)
                if not remainder.is_zero():
                    break
                numerator = quotient
                mults[root] -= 1

        poles = tuple(sorted(((r, m) for r, m in mults.items() if m > 0), key=_root_key))
        object.__setattr__(self, "numerator", numerator)
        object.__setattr__(self, "poles", poles)
        object.__setattr__(self, "scale", scale)

    # --------------------------------------------------
    # Constructors
    # --------------------------------------------------

    @classmethod
    def zero(cls) -> "RatFuncXi":
        return cls(PolyXi((ONE,)), (), ZERO)

    @classmethod
    def constant(cls, value: Any) -> "RatFuncXi":
        return cls(PolyXi((ONE,)), (), GaussianRational.of(value))

    @classmethod
    def xi(cls) -> "RatFuncXi":
        return cls(PolyXi.xi())

    @classmethod
    def from_poly(cls, poly: PolyXi) -> "RatFuncXi":
        return cls(poly)

    @classmethod
    def pole(cls, root: Any, mult: int = 1, scale: Any = 1) -> "RatFuncXi":
        """Returns ``scale / (xi - root)^mult``."""
        return cls(PolyXi((ONE,)), ((GaussianRational.of(root), mult),), scale)

    @classmethod
    def one_plus_xi2(cls, power: int) -> "RatFuncXi":
        """Returns ``(1 + xi^2)^power`` for any integer power."""
        return cls(PolyXi((ONE,)), ((I, -power), (-I, -power)))

    @classmethod
    def coerce(cls, value: Any) -> Optional["RatFuncXi"]:
        if isinstance(value, RatFuncXi):
            return value
        scalar = GaussianRational.coerce(value)
        if scalar is None:
            return None
        return cls.constant(scalar)

    # --------------------------------------------------
    # Inspection
    # --------------------------------------------------

    def is_zero(self) -> bool:
        return self.scale.is_zero()

    def __bool__(self) -> bool:
        return not self.is_zero()

    @property
    def pole_order(self) -> int:
        return sum(m for _, m in self.poles)

    @property
    def degree_at_infinity(self) -> Optional[int]:
        """deg numerator - total pole order; None for the zero function."""
        if self.is_zero():
            return None
        return self.numerator.degree - self.pole_order

    def decays(self) -> bool:
        deg = self.degree_at_infinity
        return deg is None or deg < 0

    def is_constant(self) -> bool:
        return self.is_zero() or (not self.poles and self.numerator.degree == 0)

    def is_polynomial(self) -> bool:
        return not self.poles

    def constant_value(self) -> GaussianRational:
        if not self.is_constant():
            raise ValueError(f"{self} is not constant")
        return self.scale

    def multiplicity(self, root: Any) -> int:
        root = GaussianRational.of(root)
        for r, m in self.poles:
            if r == root:
                return m
        return 0

    def roots(self) -> tuple[GaussianRational, ...]:
        return tuple(r for r, _ in self.poles)

    def expanded_denominator(self) -> PolyXi:
        denominator = PolyXi.constant(1)
        for root, mult in self.poles:
            denominator = denominator * (PolyXi.linear(root) ** mult)
        return denominator

    # --------------------------------------------------
    # Arithmetic
    # --------------------------------------------------

    def __add__(self, other: Any) -> "RatFuncXi":
        o = RatFuncXi.coerce(other)
        if o is None:
            return NotImplemented
        if self.is_zero():
            return o
        if o.is_zero():
            return self
        common: dict[GaussianRational, int] = dict(self.poles)
        for root, mult in o.poles:
            common[root] = max(common.get(root, 0), mult)

        def lifted(f: RatFuncXi) -> PolyXi:
            own = dict(f.poles)
            poly = f.numerator.scale(f.scale)
            for root, mult in common.items():
                missing = mult - own.get(root, 0)
                if missing:
                    poly = poly * (PolyXi.linear(root) ** missing)
            return poly

        return RatFuncXi(lifted(self) + lifted(o), tuple(common.items()), ONE)

    __radd__ = __add__

    def __neg__(self) -> "RatFuncXi":
        return RatFuncXi(self.numerator, self.poles, -self.scale)

    def __sub__(self, other: Any) -> "RatFuncXi":
        o = RatFuncXi.coerce(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other: Any) -> "RatFuncXi":
        o = RatFuncXi.coerce(other)
        if o is None:
            return NotImplemented
        return o + (-self)

    def __mul__(self, other: Any) -> "RatFuncXi":
        scalar = GaussianRational.coerce(other)
        if scalar is not None:
            return RatFuncXi(self.numerator, self.poles, self.scale * scalar)
        if not isinstance(other, RatFuncXi):
            return NotImplemented
        return RatFuncXi(
            self.numerator * other.numerator,
            self.poles + other.poles,
            self.scale * other.scale,
        )

    __rmul__ = __mul__

    def reciprocal(self) -> "RatFuncXi":
        """Inverts the function; the numerator must split over {+i, -i}."""
        if self.is_zero():
            raise DivisionByZeroError("reciprocal of the zero function")
        numerator = self.numerator
        new_poles: list[Pole] = []
        for root in BOUNDARY_ROOTS:
            mult = 0
            while numerator.degree > 0:
                quotient, remainder = numerator.synthetic_divide(root)
                if not remainder.is_zero():
                    break
                numerator = quotient
                mult += 1
            if mult:
                new_poles.append((root, mult))
        if numerator.degree > 0:
            raise UnsupportedPoleLocation(
                f"denominator does not factor over +i and -i: {format_ratfunc(RatFuncXi(self.numerator))}"
            )
        lifted = tuple((root, -mult) for root, mult in self.poles) + tuple(new_poles)
        return RatFuncXi(PolyXi((ONE,)), lifted, (self.scale * numerator.leading).reciprocal())

    def __truediv__(self, other: Any) -> "RatFuncXi":
        o = RatFuncXi.coerce(other)
        if o is None:
            return NotImplemented
        return self * o.reciprocal()

    def __rtruediv__(self, other: Any) -> "RatFuncXi":
        o = RatFuncXi.coerce(other)
        if o is None:
            return NotImplemented
        return o * self.reciprocal()

    def __pow__(self, exponent: int) -> "RatFuncXi":
        if not isinstance(exponent, int):
            return NotImplemented
        if exponent < 0:
            return self.reciprocal() ** (-exponent)
        if self.is_zero():
            return RatFuncXi.constant(1) if exponent == 0 else self
        return RatFuncXi(
            self.numerator ** exponent,
            tuple((r, m * exponent) for r, m in self.poles),
            self.scale ** exponent,
        )

    # --------------------------------------------------
    # Evaluation
    # --------------------------------------------------

    def __call__(self, point: Any) -> GaussianRational:
        return self.evaluate(point)

    def evaluate(self, point: Any) -> GaussianRational:
        point = GaussianRational.of(point)
        if self.is_zero():
            return ZERO
        value = self.scale * self.numerator(point)
        for root, mult in self.poles:
            if root == point:
                raise PoleAtEvaluationPoint(f"pole of order {mult} at {point}")
            value = value / ((point - root) ** mult)
        return value

    def numeric_evaluator(self, precision_bits: int):
        """Returns a callable evaluating the function on mpc arguments at the given precision."""
        with mp.workprec(precision_bits):
            scale = _as_mpc(self.scale, precision_bits)
            coeffs = [_as_mpc(c, precision_bits) for c in self.numerator.coefficients]
            poles = [(_as_mpc(r, precision_bits), m) for r, m in self.poles]

        def evaluate(z: mpc) -> mpc:
            acc = mpc(0)
            for c in reversed(coeffs):
                acc = acc * z + c
            value = scale * acc
            for root, mult in poles:
                value = value / (z - root) ** mult
            return value

        return evaluate

    def __str__(self) -> str:
        return format_ratfunc(self)


def _as_mpc(value: GaussianRational, precision_bits: int) -> mpc:
    return BigComplexFloat.from_gaussian(value, precision_bits).to_mpc()


def ensure_ratfunc(value: Any) -> RatFuncXi:
    result = RatFuncXi.coerce(value)
    if result is None:
        raise TypeError(f"Cannot convert {type(value).__name__} to RatFuncXi")
    return result


# --------------------------------------------------
# Calculus
# --------------------------------------------------

def _differentiate_once(f: RatFuncXi) -> RatFuncXi:
    if f.is_zero():
        return f
    linear = {root: PolyXi.linear(root) for root, _ in f.poles}
    all_roots = PolyXi.constant(1)
    for poly in linear.values():
        all_roots = all_roots * poly
    numerator = f.numerator.derivative() * all_roots
    for root, mult in f.poles:
        others = PolyXi.constant(mult)
        for other_root, poly in linear.items():
            if other_root != root:
                others = others * poly
        numerator = numerator - f.numerator * others
    return RatFuncXi(numerator, tuple((r, m + 1) for r, m in f.poles), f.scale)


def differentiate(f: RatFuncXi, m: int = 1) -> RatFuncXi:
    """Exact m-th derivative in xi_n; m=0 is the identity."""
    if m < 0:
        raise ValueError("derivative order must be non-negative")
    for _ in range(m):
        f = _differentiate_once(f)
    return f


def taylor_coefficients(g: RatFuncXi, point: Any, order: int) -> list[GaussianRational]:
    """Returns c_0..c_order with g(point + t) = sum c_k t^k + O(t^(order+1)).

    Raises:
        PoleAtEvaluationPoint: If ``point`` is a pole of ``g``.
    """
    point = GaussianRational.of(point)
    if g.is_zero():
        return [ZERO] * (order + 1)
    shifted = g.numerator.shift(point)
    series = [shifted.coefficient(k) * g.scale for k in range(order + 1)]
    for root, mult in g.poles:
        gap = point - root
        if gap.is_zero():
            raise PoleAtEvaluationPoint(f"pole of order {mult} at {point}")
        inv_gap = gap.reciprocal()
        base = inv_gap ** mult
        factor = []
        for k in range(order + 1):
            factor.append(base * binomial_general(-mult, k))
            base = base * inv_gap
        series = [
            sum((series[j] * factor[k - j] for j in range(k + 1)), ZERO)
            for k in range(order + 1)
        ]
    return series


def derivative_at(g: RatFuncXi, m: int, point: Any) -> GaussianRational:
    """Exact value of g^(m)(point)."""
    if m < 0:
        raise ValueError("derivative order must be non-negative")
    return taylor_coefficients(g, point, m)[m] * factorial(m)


# --------------------------------------------------
# Partial fractions and the pi+ projection
# --------------------------------------------------

@dataclass(frozen=True)
class PrincipalPart:
    """Singular part ``sum_k c_k (xi - root)^-k`` at one root.

    ``polynomial_part`` is the polynomial part shared by the whole decomposition
    the part came from.
    """

    root: GaussianRational
    coefficients: tuple[tuple[int, GaussianRational], ...]
    polynomial_part: PolyXi = PolyXi()

    def coefficient(self, k: int) -> GaussianRational:
        for order, value in self.coefficients:
            if order == k:
                return value
        return ZERO

    def as_dict(self) -> dict[int, GaussianRational]:
        return dict(self.coefficients)

    @property
    def order(self) -> int:
        return max((k for k, _ in self.coefficients), default=0)

    def to_ratfunc(self) -> RatFuncXi:
        top = self.order
        if top == 0:
            return RatFuncXi.zero()
        numerator = PolyXi()
        linear = PolyXi.linear(self.root)
        for k, value in self.coefficients:
            numerator = numerator + (linear ** (top - k)).scale(value)
        return RatFuncXi(numerator, ((self.root, top),), ONE)


@dataclass(frozen=True)
class PartialFractions:
    """All principal parts of a function plus its single polynomial part."""

    parts: tuple[PrincipalPart, ...]
    polynomial_part: PolyXi

    def __iter__(self) -> Iterator[PrincipalPart]:
        return iter(self.parts)

    def __len__(self) -> int:
        return len(self.parts)

    def __getitem__(self, index: int) -> PrincipalPart:
        return self.parts[index]

    def part_at(self, root: Any) -> Optional[PrincipalPart]:
        root = GaussianRational.of(root)
        for part in self.parts:
            if part.root == root:
                return part
        return None

    def reconstruct(self) -> RatFuncXi:
        total = RatFuncXi.from_poly(self.polynomial_part)
        for part in self.parts:
            total = total + part.to_ratfunc()
        return total


def principal_part(f: RatFuncXi, root: Any, polynomial: Optional[PolyXi] = None) -> Optional[PrincipalPart]:
    """Principal part of ``f`` at ``root``; None when ``root`` is not a pole."""
    root = GaussianRational.of(root)
    mult = f.multiplicity(root)
    if mult == 0:
        return None
    regular = RatFuncXi(f.numerator, tuple(p for p in f.poles if p[0] != root), f.scale)
    taylor = taylor_coefficients(regular, root, mult - 1)
    coefficients = tuple(
        (mult - k, value) for k, value in reversed(list(enumerate(taylor))) if not value.is_zero()
    )
    return PrincipalPart(root, coefficients, polynomial if polynomial is not None else PolyXi())


def polynomial_part(f: RatFuncXi) -> PolyXi:
    if f.is_zero() or f.numerator.degree < f.pole_order:
        return PolyXi()
    quotient, _ = f.numerator.divmod(f.expanded_denominator())
    return quotient.scale(f.scale)


def partial_fractions(f: RatFuncXi) -> PartialFractions:
    poly = polynomial_part(f)
    parts = tuple(principal_part(f, root, poly) for root, _ in f.poles)
    return PartialFractions(tuple(p for p in parts if p is not None), poly)


def check_boundary_poles(f: RatFuncXi) -> None:
    for root, _ in f.poles:
        if root not in BOUNDARY_ROOTS:
            raise UnsupportedPoleLocation(f"pole at {root}; only +i and -i are supported")


def pi_plus(f: RatFuncXi, allow_growth: bool = False) -> RatFuncXi:
    """Principal part of ``f`` at +i; the -i part and the polynomial part are dropped.

    Raises:
        UnsupportedPoleLocation: If a pole lies outside {+i, -i}.
        NonDecayingIntegrand: If ``f`` does not decay and ``allow_growth`` is False.
    """
    if f.is_zero():
        return f
    check_boundary_poles(f)
    if not f.decays():
        if not allow_growth:
            raise NonDecayingIntegrand(f"pi+ of non-decaying function {f}")
        logger.warning("pi+ drops polynomial part %s", format_ratfunc(RatFuncXi.from_poly(polynomial_part(f))))
    part = principal_part(f, I)
    return part.to_ratfunc() if part is not None else RatFuncXi.zero()


def residue(f: RatFuncXi, root: Any) -> GaussianRational:
    part = principal_part(f, root)
    return part.coefficient(1) if part is not None else ZERO


class ContourValue(NamedTuple):
    """Value ``coefficient * pi**pi_power`` of a contour integral."""

    coefficient: GaussianRational
    pi_power: int = 1


def contour_integral_upper(f: RatFuncXi, closed: bool = False) -> ContourValue:
    """Integral over the real line closed in the upper half plane: 2*pi*i*Res_{+i} f.

    With ``closed=True`` the integral is read as the closed Gamma+ contour
    around +i and no decay is required.
    """
    if f.is_zero():
        return ContourValue(ZERO, 1)
    check_boundary_poles(f)
    if not closed and f.numerator.degree > f.pole_order - 2:
        raise NonDecayingIntegrand(f"real-line integral of {f} does not converge")
    return ContourValue(GaussianRational(0, 2) * residue(f, I), 1)


@lru_cache(maxsize=16)
def _circle_nodes(nodes: int, precision_bits: int) -> tuple[mpc, ...]:
    with mp.workprec(precision_bits):
        radius = mpf(1) / 2
        return tuple(radius * mp.expjpi(mpf(2 * k) / nodes) for k in range(nodes))


def contour_residue_numeric(f: RatFuncXi, precision_bits: int = 256, nodes: int = 4096) -> BigComplexFloat:
    """Trapezoidal estimate of (1/2 pi i) * contour integral of f on |xi - i| = 1/2."""
    if precision_bits < MIN_PRECISION_BITS:
        raise ValueError(f"precision_bits must be >= {MIN_PRECISION_BITS}")
    if nodes < MIN_NODES:
        raise ValueError(f"nodes must be >= {MIN_NODES}")
    if f.is_zero():
        return BigComplexFloat.from_gaussian(ZERO, precision_bits)
    evaluate = f.numeric_evaluator(precision_bits)
    with mp.workprec(precision_bits):
        center = mpc(0, 1)
        total = mpc(0)
        for offset in _circle_nodes(nodes, precision_bits):
            total += evaluate(center + offset) * offset
        return BigComplexFloat.from_mpc(total / nodes, precision_bits)


# --------------------------------------------------
# Canonical text
# --------------------------------------------------

def _root_text(root: GaussianRational) -> str:
    if root.is_zero():
        return "xi"
    text = str(root)
    if root.is_real() or root.re == 0:
        if text.startswith("-"):
            return f"xi+{text[1:]}"
        return f"xi-{text}"
    return f"xi-({text})"


def _scaled_text(value: GaussianRational, num_factors: list[str], den_factors: list[str]) -> tuple[str, str]:
    """Returns (sign, body) for ``value * prod(num) / prod(den)``."""
    den = math.lcm(value.re.denominator, value.im.denominator)
    p = int(value.re * den)
    q = int(value.im * den)
    sign = "+"
    if q == 0:
        if p < 0:
            sign, p = "-", -p
        head = [str(p)] if p != 1 else []
    elif p == 0:
        if q < 0:
            sign, q = "-", -q
        head = ([str(q)] if q != 1 else []) + ["i"]
    else:
        imag = "i" if abs(q) == 1 else f"{abs(q)}*i"
        head = [f"({p}{'+' if q > 0 else '-'}{imag})"]
    numerator = "*".join(head + num_factors) or "1"
    denominator = ([str(den)] if den != 1 else []) + den_factors
    if not denominator:
        return sign, numerator
    if len(denominator) == 1:
        return sign, f"{numerator}/{denominator[0]}"
    return sign, f"{numerator}/({'*'.join(denominator)})"


def _join_terms(terms: Iterable[tuple[str, str]]) -> str:
    out = ""
    for sign, body in terms:
        if not out:
            out = f"-{body}" if sign == "-" else body
        else:
            out += f" - {body}" if sign == "-" else f" + {body}"
    return out or "0"


def format_ratfunc(f: RatFuncXi) -> str:
    """Canonical text: polynomial part (descending), then principal parts per root."""
    if f.is_zero():
        return "0"
    decomposition = partial_fractions(f)
    terms: list[tuple[str, str]] = []
    poly = decomposition.polynomial_part
    for k in range(poly.degree, -1, -1):
        value = poly.coefficient(k)
        if value.is_zero():
            continue
        factors = [] if k == 0 else (["xi"] if k == 1 else [f"xi^{k}"])
        terms.append(_scaled_text(value, factors, []))
    for part in decomposition:
        base = _root_text(part.root)
        for k, value in part.coefficients:
            power = f"({base})" if k == 1 else f"({base})^{k}"
            terms.append(_scaled_text(value, [], [power]))
    return _join_terms(terms)
