"""Boundary symbol expressions and the operators acting on them.

A :class:`SymbolExpr` is a sum of terms ``atoms * xi_structure * radial(xi_n) * word``
evaluated at a boundary point with |xi'| = 1 and h(0) = 1. Every term may
carry its radial homogeneity degree, which the normal derivative needs.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field, replace
from enum import Enum
from functools import lru_cache
from importlib import resources
from pathlib import Path
from typing import Any, Iterable, Iterator, Mapping, Optional, Union

from wres_verifier.arith import ONE, ZERO, GaussianRational
from wres_verifier.clifford import (
    CliffordElement,
    CliffordLetter,
    IDENTITY,
    Word,
    reduce_word,
    spinor_trace,
    word_key,
    word_text,
)
from wres_verifier.errors import (
    FixtureFormatError,
    UnknownFixture,
    UnsupportedDerivative,
)
from wres_verifier.parser import evaluate_constant, parse_expression
from wres_verifier.ratfunc import RatFuncXi, differentiate, format_ratfunc, pi_plus

logger = logging.getLogger("wres_verifier.symbols")


class ScalarAtom(str, Enum):
    HP = "HP"
    G_TT = "G_TT"
    XNYN = "XNYN"
    D_G_TT = "D_G_TT"
    D_XNYN = "D_XNYN"
    XYN = "XYN"
    VOL = "VOL"
    PI = "PI"
    RIC_XY = "RIC_XY"
    S_G_XY = "S_G_XY"

    @property
    def display(self) -> str:
        return _ATOM_DISPLAY[self]


_ATOM_DISPLAY = {
    ScalarAtom.HP: "h'(0)",
    ScalarAtom.G_TT: "g(XT,YT)",
    ScalarAtom.XNYN: "Xn*Yn",
    ScalarAtom.D_G_TT: "dg(XT,YT)",
    ScalarAtom.D_XNYN: "d(Xn*Yn)",
    ScalarAtom.XYN: "X(Yn)",
    ScalarAtom.VOL: "Vol(S^{n-2})",
    ScalarAtom.PI: "pi",
    ScalarAtom.RIC_XY: "[Ric-s*g/2](X,Y)",
    ScalarAtom.S_G_XY: "s*g(X,Y)",
}
_ATOM_RANK = {atom: k for k, atom in enumerate(ScalarAtom)}

# atoms that do not depend on x_n
_CONSTANT_ATOMS = frozenset({ScalarAtom.VOL, ScalarAtom.PI})
_NORMAL_DERIVATIVE = {ScalarAtom.XNYN: ScalarAtom.D_XNYN}


class XiPrimeStructure(str, Enum):
    """Contracted xi' factors; their sphere moments are fixed."""

    ONE = "ONE"
    S_XY = "S_XY"
    S_dXY = "S_dXY"
    S_CROSS = "S_CROSS"
    S_dCROSS = "S_dCROSS"

    @property
    def xi_degree(self) -> int:
        return {"ONE": 0, "S_XY": 2, "S_dXY": 2, "S_CROSS": 1, "S_dCROSS": 1}[self.value]

    @property
    def parity(self) -> str:
        return "odd" if self.xi_degree % 2 else "even"

    @classmethod
    def parse(cls, token: str) -> "XiPrimeStructure":
        for member in cls:
            if member.value.lower() == token.strip().lower():
                return member
        raise ValueError(f"Unknown xi' structure '{token}'")


_XI_RANK = {s: k for k, s in enumerate(XiPrimeStructure)}


@dataclass(frozen=True)
class Monomial:
    """Commuting product of scalar atoms, stored as sorted (atom, exponent) pairs."""

    factors: tuple[tuple[ScalarAtom, int], ...] = ()

    def __post_init__(self) -> None:
        powers: dict[ScalarAtom, int] = {}
        for atom, exp in self.factors:
            atom = ScalarAtom(atom)
            powers[atom] = powers.get(atom, 0) + int(exp)
        factors = tuple(sorted(((a, e) for a, e in powers.items() if e), key=lambda f: _ATOM_RANK[f[0]]))
        object.__setattr__(self, "factors", factors)

    @classmethod
    def of(cls, powers: Optional[Mapping[Any, int]] = None, **kwargs: int) -> "Monomial":
        items = list((powers or {}).items()) + list(kwargs.items())
        return cls(tuple((ScalarAtom(a), e) for a, e in items))

    @classmethod
    def parse(cls, text: str) -> "Monomial":
        text = text.strip()
        if text in ("", "1", "none"):
            return cls()
        factors = []
        for chunk in text.split(","):
            name, _, exp = chunk.partition(":")
            factors.append((ScalarAtom(name.strip()), int(exp) if exp else 1))
        return cls(tuple(factors))

    def __mul__(self, other: "Monomial") -> "Monomial":
        return Monomial(self.factors + other.factors)

    def degree(self, atom: ScalarAtom) -> int:
        return dict(self.factors).get(atom, 0)

    def without(self, atom: ScalarAtom) -> "Monomial":
        return Monomial(tuple(f for f in self.factors if f[0] != atom))

    def is_one(self) -> bool:
        return not self.factors

    def sort_key(self) -> tuple:
        return tuple((_ATOM_RANK[a], e) for a, e in self.factors)

    def to_text(self) -> str:
        return ",".join(f"{a.value}:{e}" for a, e in self.factors) or "1"

    def display(self) -> str:
        parts = []
        for atom, exp in self.factors:
            parts.append(atom.display if exp == 1 else f"{atom.display}^{exp}")
        return "*".join(parts) or "1"


HP_MONOMIAL = Monomial(((ScalarAtom.HP, 1),))


# --------------------------------------------------
# Terms and expressions
# --------------------------------------------------

@dataclass(frozen=True)
class SymbolTerm:
    """One term; the numeric coefficient lives in ``radial.scale``."""

    atoms: Monomial
    xi: XiPrimeStructure
    radial: RatFuncXi
    word: Word = IDENTITY
    degree: Optional[int] = None
    p0: bool = False

    @property
    def coeff(self) -> GaussianRational:
        return self.radial.scale

    @property
    def key(self) -> tuple:
        return (self.atoms, self.xi, self.word)

    def sort_key(self) -> tuple:
        return (self.atoms.sort_key(), _XI_RANK[self.xi], word_key(self.word))

    def to_text(self) -> str:
        out = f"atoms={self.atoms.to_text()} xi={self.xi.value} radial={format_ratfunc(self.radial)} cliff={word_text(self.word)}"
        if self.degree is not None:
            out += f" degree={self.degree}"
        if self.p0:
            out += " p0"
        return out


def _normalise(term: SymbolTerm) -> SymbolTerm:
    if CliffordLetter.P0 in term.word:
        return term
    sign, word = reduce_word(term.word)
    radial = term.radial if sign > 0 else -term.radial
    return replace(term, word=word, radial=radial)


def _unique(items: Iterable[str]) -> tuple[str, ...]:
    return tuple(dict.fromkeys(items))


@dataclass(frozen=True)
class SymbolExpr:
    """Canonical sum of symbol terms plus carried notes.

    ``residuals`` are printed pieces that are not representable here (connection
    data); ``flags`` record suspected typos and dropped polynomial parts.
    """

    terms: tuple[SymbolTerm, ...] = ()
    residuals: tuple[str, ...] = ()
    flags: tuple[str, ...] = ()

    def __post_init__(self) -> None:
        merged: dict[tuple, SymbolTerm] = {}
        for term in self.terms:
            term = _normalise(term)
            current = merged.get(term.key)
            if current is None:
                merged[term.key] = term
                continue
            merged[term.key] = SymbolTerm(
                term.atoms,
                term.xi,
                current.radial + term.radial,
                term.word,
                current.degree if current.degree == term.degree else None,
                current.p0 or term.p0,
            )
        terms = tuple(sorted((t for t in merged.values() if not t.radial.is_zero()), key=SymbolTerm.sort_key))
        object.__setattr__(self, "terms", terms)
        object.__setattr__(self, "residuals", _unique(self.residuals))
        object.__setattr__(self, "flags", _unique(self.flags))

    @classmethod
    def single(
        cls,
        radial: Union[RatFuncXi, Any] = ONE,
        atoms: Optional[Monomial] = None,
        xi: XiPrimeStructure = XiPrimeStructure.ONE,
        word: Iterable[CliffordLetter] = IDENTITY,
        degree: Optional[int] = None,
    ) -> "SymbolExpr":
        radial = radial if isinstance(radial, RatFuncXi) else RatFuncXi.constant(radial)
        return cls((SymbolTerm(atoms or Monomial(), xi, radial, tuple(word), degree),))

    def is_zero(self) -> bool:
        return not self.terms

    def __iter__(self) -> Iterator[SymbolTerm]:
        return iter(self.terms)

    def __len__(self) -> int:
        return len(self.terms)

    def has_p0(self) -> bool:
        return any(t.p0 for t in self.terms)

    def with_notes(self, residuals: Iterable[str] = (), flags: Iterable[str] = ()) -> "SymbolExpr":
        return SymbolExpr(self.terms, self.residuals + tuple(residuals), self.flags + tuple(flags))

    def map_terms(self, fn) -> "SymbolExpr":
        out: list[SymbolTerm] = []
        for term in self.terms:
            result = fn(term)
            if isinstance(result, SymbolTerm):
                out.append(result)
            elif result is not None:
                out.extend(result)
        return SymbolExpr(tuple(out), self.residuals, self.flags)

    def __add__(self, other: "SymbolExpr") -> "SymbolExpr":
        if not isinstance(other, SymbolExpr):
            return NotImplemented
        return SymbolExpr(self.terms + other.terms, self.residuals + other.residuals, self.flags + other.flags)

    def __neg__(self) -> "SymbolExpr":
        return self.scale(-1)

    def __sub__(self, other: "SymbolExpr") -> "SymbolExpr":
        if not isinstance(other, SymbolExpr):
            return NotImplemented
        return self + (-other)

    def scale(self, factor: Any) -> "SymbolExpr":
        factor = GaussianRational.of(factor)
        return self.map_terms(lambda t: replace(t, radial=t.radial * factor))

    def times_atoms(self, atoms: Monomial) -> "SymbolExpr":
        return self.map_terms(lambda t: replace(t, atoms=t.atoms * atoms))

    def __mul__(self, other: Any) -> "SymbolExpr":
        if not isinstance(other, SymbolExpr):
            return self.scale(other)
        products = []
        for a in self.terms:
            for b in other.terms:
                if a.xi is not XiPrimeStructure.ONE and b.xi is not XiPrimeStructure.ONE:
                    raise ValueError(f"cannot multiply xi' structures {a.xi.value} and {b.xi.value}")
                xi = a.xi if b.xi is XiPrimeStructure.ONE else b.xi
                degree = None if a.degree is None or b.degree is None else a.degree + b.degree
                products.append(SymbolTerm(a.atoms * b.atoms, xi, a.radial * b.radial, a.word + b.word, degree, a.p0 or b.p0))
        return SymbolExpr(tuple(products), self.residuals + other.residuals, self.flags + other.flags)

    def __rmul__(self, other: Any) -> "SymbolExpr":
        return self.scale(other)

    def even_part(self) -> "SymbolExpr":
        return self.map_terms(lambda t: t if t.xi.parity == "even" else None)

    def same_terms(self, other: "SymbolExpr") -> bool:
        """Equality of the represented values; degrees and notes are ignored."""
        return (self - other).is_zero()

    def to_text(self) -> str:
        return "\n".join(t.to_text() for t in self.terms) or "0"


# --------------------------------------------------
# Operators
# --------------------------------------------------

def d_xin(e: SymbolExpr, m: int = 1) -> SymbolExpr:
    """m-th xi_n derivative; atoms, structures and words are xi_n constants."""
    if m < 0:
        raise ValueError("derivative order must be non-negative")
    if m == 0:
        return e
    return e.map_terms(lambda t: replace(
        t,
        radial=differentiate(t.radial, m),
        degree=None if t.degree is None else t.degree - m,
    ))


def d_xtan(e: SymbolExpr) -> SymbolExpr:
    """Tangential derivative at the boundary point: every representable term vanishes."""
    return SymbolExpr((), e.residuals, e.flags)


def _atoms_derivative(term: SymbolTerm) -> list[SymbolTerm]:
    out = []
    for atom, exp in term.atoms.factors:
        if atom in _CONSTANT_ATOMS:
            continue
        target = _NORMAL_DERIVATIVE.get(atom)
        if target is None:
            raise UnsupportedDerivative(f"no boundary rule for the normal derivative of {atom.value}")
        atoms = Monomial(term.atoms.factors + ((atom, -1), (target, 1)))
        out.append(replace(term, atoms=atoms, radial=term.radial * exp))
    return out


def _structure_derivative(term: SymbolTerm) -> list[SymbolTerm]:
    if term.xi is XiPrimeStructure.ONE:
        return []
    if term.xi is XiPrimeStructure.S_XY:
        return [
            replace(term, xi=XiPrimeStructure.S_dXY),
            replace(term, atoms=term.atoms * HP_MONOMIAL),
        ]
    if term.xi is XiPrimeStructure.S_CROSS:
        return [replace(term, xi=XiPrimeStructure.S_dCROSS)]
    raise UnsupportedDerivative(f"no boundary rule for the normal derivative of {term.xi.value}")


def _radial_derivative(term: SymbolTerm) -> list[SymbolTerm]:
    if term.radial.is_constant() and term.degree in (0, None):
        return []
    if term.degree is None:
        raise UnsupportedDerivative(
            f"radial part {format_ratfunc(term.radial)} has no recorded homogeneity degree"
        )
    # |xi'|^2_g = h(x_n): d/dx_n r = h'(0) * (d/2 * r - xi_n/2 * r')
    half = GaussianRational(1) / 2
    euler = term.radial * (half * term.degree) - RatFuncXi.xi() * differentiate(term.radial, 1) * half
    return [replace(term, atoms=term.atoms * HP_MONOMIAL, radial=euler)]


def _word_derivative(term: SymbolTerm) -> list[SymbolTerm]:
    if CliffordLetter.P0 in term.word:
        raise UnsupportedDerivative("cannot differentiate an unresolved p0")
    count = sum(1 for letter in term.word if letter is CliffordLetter.CXI)
    if not count:
        return []
    # d/dx_n c(xi') = (h'(0)/2) c(xi')
    return [replace(term, atoms=term.atoms * HP_MONOMIAL, radial=term.radial * (GaussianRational(count) / 2))]


def d_xn(e: SymbolExpr) -> SymbolExpr:
    """Normal derivative at the boundary point, by the product rule.

    Raises:
        UnsupportedDerivative: For atoms, structures or radial parts without a boundary rule.
    """
    def derive(term: SymbolTerm) -> list[SymbolTerm]:
        return (
            _atoms_derivative(term)
            + _structure_derivative(term)
            + _radial_derivative(term)
            + _word_derivative(term)
        )

    return e.map_terms(derive)


def pi_plus_symbol(e: SymbolExpr) -> SymbolExpr:
    """Applies pi+ to every radial part; dropped polynomial parts are flagged."""
    flags: list[str] = []

    def project(term: SymbolTerm) -> SymbolTerm:
        if not term.radial.decays():
            note = f"pi+ dropped the polynomial part of {format_ratfunc(term.radial)} ({term.atoms.to_text()} {term.xi.value} {word_text(term.word)})"
            logger.warning(note)
            flags.append(note)
        return replace(term, radial=pi_plus(term.radial, allow_growth=True))

    projected = e.map_terms(project)
    return projected.with_notes(flags=flags)


def sphere_integrate(e: SymbolExpr, n: int) -> SymbolExpr:
    """Integrates xi' over the unit sphere S^{n-2}."""
    if n < 4 or n % 2:
        raise ValueError(f"sphere_integrate needs an even n >= 4, got {n}")
    vol = Monomial(((ScalarAtom.VOL, 1),))
    moment = GaussianRational(1) / (n - 1)

    def integrate(term: SymbolTerm) -> Optional[SymbolTerm]:
        if term.xi.parity == "odd":
            return None
        if term.xi is XiPrimeStructure.ONE:
            return replace(term, atoms=term.atoms * vol)
        target = ScalarAtom.G_TT if term.xi is XiPrimeStructure.S_XY else ScalarAtom.D_G_TT
        return replace(
            term,
            atoms=term.atoms * vol * Monomial(((target, 1),)),
            xi=XiPrimeStructure.ONE,
            radial=term.radial * moment,
        )

    return e.map_terms(integrate)


def compose_leading(a: SymbolExpr, b: SymbolExpr) -> SymbolExpr:
    """Top-order term of the composition series: the pointwise product."""
    return a * b


def substitute_p0_symbol(e: SymbolExpr, rule: SymbolExpr) -> SymbolExpr:
    """Replaces every p0 letter by ``rule``; results are marked conditional."""
    if rule.has_p0() or any(CliffordLetter.P0 in t.word for t in rule.terms):
        raise ValueError("p0 rule must not contain p0")
    rule = rule.map_terms(lambda t: replace(t, p0=True))
    out = SymbolExpr((), e.residuals, e.flags)
    for term in e.terms:
        if CliffordLetter.P0 not in term.word:
            out = out + SymbolExpr((term,))
            continue
        product = SymbolExpr((replace(term, word=IDENTITY),))
        for letter in term.word:
            if letter is CliffordLetter.P0:
                factor = rule
            else:
                factor = SymbolExpr.single(ONE, word=(letter,), degree=0)
            product = product * factor
        out = out + product.map_terms(lambda t: replace(t, p0=True))
    return out


def trace_symbol(e: SymbolExpr, n: int, rank: Optional[int] = None) -> SymbolExpr:
    """Spinor trace of every Clifford word."""
    def trace(term: SymbolTerm) -> Optional[SymbolTerm]:
        value = spinor_trace(CliffordElement.from_word(term.word), n, rank)
        if value == 0:
            return None
        return replace(term, word=IDENTITY, radial=term.radial * value)

    return e.map_terms(trace)


def diff_symbols(derived: SymbolExpr, printed: SymbolExpr, even_only: bool = False) -> list[dict[str, str]]:
    """Term-level differences between a derivation and a printed expression."""
    if even_only:
        derived, printed = derived.even_part(), printed.even_part()
    left = {t.key: t for t in derived.terms}
    right = {t.key: t for t in printed.terms}
    rows = []
    for key in sorted(set(left) | set(right), key=lambda k: (k[0].sort_key(), _XI_RANK[k[1]], word_key(k[2]))):
        a = left[key].radial if key in left else RatFuncXi.zero()
        b = right[key].radial if key in right else RatFuncXi.zero()
        if a != b:
            rows.append({
                "atoms": key[0].to_text(),
                "xi": key[1].value,
                "word": word_text(key[2]),
                "derived": format_ratfunc(a),
                "printed": format_ratfunc(b),
            })
    return rows


# --------------------------------------------------
# Fixture corpus
# --------------------------------------------------

def split_fields(text: str, source: str = "<string>", line: Optional[int] = None) -> dict[str, str]:
    """Splits ``key=value`` tokens; bare tokens map to an empty string."""
    fields: dict[str, str] = {}
    for token in text.split():
        key, sep, value = token.partition("=")
        if key in fields:
            raise FixtureFormatError(f"duplicate field '{key}'", source, line)
        fields[key] = value if sep else ""
    return fields


def _quoted(text: str, source: str, line: int) -> str:
    text = text.strip()
    if len(text) < 2 or text[0] != '"' or text[-1] != '"':
        raise FixtureFormatError("expected a double-quoted string", source, line)
    return text[1:-1]


def iter_records(text: str, source: str = "<string>") -> Iterator[tuple[int, str, str]]:
    """Yields (line number, keyword, rest) for every non-blank, non-comment line."""
    for number, raw in enumerate(text.splitlines(), start=1):
        stripped = raw.strip()
        if not stripped or stripped.startswith("#"):
            continue
        keyword, _, rest = stripped.partition(" ")
        yield number, keyword, rest.strip()


@dataclass(frozen=True)
class FixtureTerm:
    """Unevaluated term record; expressions are kept as text until n is known."""

    coeff: str = "1"
    atoms: Monomial = Monomial()
    xi: XiPrimeStructure = XiPrimeStructure.ONE
    radial: str = "1"
    cliff: str = "1"
    block: Optional[str] = None

    @classmethod
    def parse(cls, text: str, source: str = "<string>", line: Optional[int] = None) -> "FixtureTerm":
        fields = split_fields(text, source, line)
        unknown = set(fields) - {"coeff", "atoms", "xi", "radial", "cliff", "block"}
        if unknown:
            raise FixtureFormatError(f"unknown field(s) {sorted(unknown)}", source, line)
        try:
            term = cls(
                coeff=fields.get("coeff", "1"),
                atoms=Monomial.parse(fields.get("atoms", "")),
                xi=XiPrimeStructure.parse(fields.get("xi", "ONE")),
                radial=fields.get("radial", "1"),
                cliff=fields.get("cliff", "1"),
                block=fields.get("block"),
            )
            _parse_letters(term.cliff)
        except ValueError as exc:
            raise FixtureFormatError(str(exc), source, line) from exc
        return term

    def to_text(self) -> str:
        out = f"term coeff={self.coeff}"
        if not self.atoms.is_one():
            out += f" atoms={self.atoms.to_text()}"
        if self.xi is not XiPrimeStructure.ONE:
            out += f" xi={self.xi.value}"
        if self.radial != "1":
            out += f" radial={self.radial}"
        if self.cliff != "1":
            out += f" cliff={self.cliff}"
        if self.block:
            out += f" block={self.block}"
        return out

    def instantiate(self, n: int, order: Optional[int]) -> SymbolTerm:
        coeff = evaluate_constant(self.coeff, n)
        radial = parse_expression(self.radial, n) * coeff
        letters, derived_count = _parse_letters(self.cliff)
        atoms = self.atoms
        if derived_count:
            # d/dx_n c(xi') = (h'(0)/2) c(xi')
            atoms = atoms * Monomial(((ScalarAtom.HP, derived_count),))
            radial = radial * (GaussianRational(1) / (2 ** derived_count))
        degree = None
        if order is not None:
            xi_letters = sum(1 for letter in letters if letter is CliffordLetter.CXI)
            degree = order - self.xi.xi_degree - xi_letters
        return SymbolTerm(atoms, self.xi, radial, letters, degree, CliffordLetter.P0 in letters)


def _parse_letters(text: str) -> tuple[Word, int]:
    text = text.strip()
    if text in ("", "1"):
        return IDENTITY, 0
    letters = []
    derived = 0
    for token in text.split("."):
        if token.strip().upper() == "DCXI":
            derived += 1
            letters.append(CliffordLetter.CXI)
        else:
            letters.append(CliffordLetter.parse(token))
    return tuple(letters), derived


@dataclass(frozen=True)
class Fixture:
    """One printed symbol expression as stored in the corpus."""

    id: str
    anchor: str = ""
    order: Optional[str] = None
    terms: tuple[FixtureTerm, ...] = ()
    residuals: tuple[str, ...] = ()
    flags: tuple[str, ...] = ()
    source: str = "<string>"

    def order_at(self, n: int) -> Optional[int]:
        if self.order is None:
            return None
        value = evaluate_constant(self.order, n)
        if not value.is_integer():
            raise FixtureFormatError(f"order of {self.id} is not an integer at n={n}", self.source)
        return int(value.re)

    def blocks(self) -> tuple[str, ...]:
        return _unique(t.block for t in self.terms if t.block)

    def instantiate(self, n: int, block: Optional[str] = None) -> SymbolExpr:
        order = self.order_at(n)
        terms = tuple(
            t.instantiate(n, order) for t in self.terms if block is None or t.block == block
        )
        return SymbolExpr(terms, self.residuals, self.flags)

    def to_text(self) -> str:
        lines = [f"fixture {self.id}"]
        if self.anchor:
            lines.append(f'anchor "{self.anchor}"')
        lines.append(f"order {self.order if self.order is not None else 'none'}")
        lines.extend(t.to_text() for t in self.terms)
        lines.extend(f'residual "{r}"' for r in self.residuals)
        lines.extend(f'flag "{f}"' for f in self.flags)
        return "\n".join(lines) + "\n"


def parse_fixture(text: str, source: str = "<string>") -> Fixture:
    """Parses one fixture file.

    Raises:
        FixtureFormatError: On unknown records or malformed fields.
    """
    fixture_id: Optional[str] = None
    anchor = ""
    order: Optional[str] = None
    terms: list[FixtureTerm] = []
    residuals: list[str] = []
    flags: list[str] = []
    for line, keyword, rest in iter_records(text, source):
        if keyword == "fixture":
            if fixture_id is not None:
                raise FixtureFormatError("second fixture header", source, line)
            fixture_id = rest
        elif fixture_id is None:
            raise FixtureFormatError("expected a 'fixture <ID>' header first", source, line)
        elif keyword == "anchor":
            anchor = _quoted(rest, source, line)
        elif keyword == "order":
            order = None if rest == "none" else rest
        elif keyword == "term":
            terms.append(FixtureTerm.parse(rest, source, line))
        elif keyword == "residual":
            residuals.append(_quoted(rest, source, line))
        elif keyword == "flag":
            flags.append(_quoted(rest, source, line))
        else:
            raise FixtureFormatError(f"unknown record '{keyword}'", source, line)
    if fixture_id is None:
        raise FixtureFormatError("missing 'fixture <ID>' header", source)
    return Fixture(fixture_id, anchor, order, tuple(terms), tuple(residuals), tuple(flags), source)


def dump_fixture(fixture: Fixture) -> str:
    return fixture.to_text()


def bundled_fixture_dir() -> Path:
    return Path(str(resources.files("wres_verifier").joinpath("fixtures")))


@dataclass
class FixtureCatalog:
    """Lazily loaded, read-only view of a fixture directory."""

    directory: Optional[Path] = None
    _fixtures: dict[str, Fixture] = field(default_factory=dict, init=False, repr=False)

    def __post_init__(self) -> None:
        self.directory = Path(self.directory) if self.directory else bundled_fixture_dir()

    def _load_all(self) -> dict[str, Fixture]:
        if not self._fixtures:
            for path in sorted(Path(self.directory).glob("*.fix")):
                fixture = parse_fixture(path.read_text(encoding="utf-8"), str(path))
                self._fixtures[fixture.id] = fixture
            logger.debug("loaded %d fixtures from %s", len(self._fixtures), self.directory)
        return self._fixtures

    def ids(self) -> list[str]:
        return sorted(self._load_all())

    def get(self, fixture_id: str) -> Fixture:
        fixtures = self._load_all()
        if fixture_id not in fixtures:
            raise UnknownFixture(f"Unknown fixture: {fixture_id}")
        return fixtures[fixture_id]

    def load(self, fixture_id: str, n: int, block: Optional[str] = None) -> SymbolExpr:
        return self.get(fixture_id).instantiate(n, block)


@lru_cache(maxsize=8)
def _catalog(directory: Optional[str]) -> FixtureCatalog:
    return FixtureCatalog(Path(directory) if directory else None)


def default_catalog(directory: Optional[Union[str, Path]] = None) -> FixtureCatalog:
    return _catalog(str(directory) if directory else None)


def load_fixture(fixture_id: str, n: int, directory: Optional[Union[str, Path]] = None) -> SymbolExpr:
    """Instantiates a fixture at dimension ``n``.

    Raises:
        UnknownFixture: If ``fixture_id`` is not in the catalog.
    """
    return default_catalog(directory).load(fixture_id, n)


def parse_rule(text: str, n: int) -> SymbolExpr:
    """Parses a p0 rule: one or more term records separated by ';'."""
    terms = []
    for chunk in text.split(";"):
        if chunk.strip():
            record = chunk.strip()
            if record.startswith("term "):
                record = record[5:]
            terms.append(FixtureTerm.parse(record, "<p0 rule>").instantiate(n, 0))
    return SymbolExpr(tuple(terms))
