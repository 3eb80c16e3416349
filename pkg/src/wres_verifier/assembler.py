"""Boundary-term assembly: case pipelines, theorem sums and reconciliation.

Two variants produce every case value:

* ``fixture`` evaluates the printed case formula with catalog coefficients;
* ``derived`` runs the symbol pipeline (pi+, derivatives, product, spinor
  trace, sphere moments, Gamma+ contour) on the fixture corpus.

:meth:`Assembler.reconcile` lines both up against the printed theorem
statement.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from functools import cached_property
from pathlib import Path
from typing import Any, Iterable, Optional, Union

from wres_verifier.arith import I, ONE, ZERO, GaussianRational, factorial
from wres_verifier.coeffs import check_dimension, coefficient_value
from wres_verifier.config import DEFAULT_P0_RULE
from wres_verifier.errors import FixtureFormatError, UnknownTheorem
from wres_verifier.parser import evaluate_constant
from wres_verifier.ratfunc import contour_integral_upper
from wres_verifier.symbols import (
    FixtureCatalog,
    _quoted,
    Monomial,
    ScalarAtom,
    SymbolExpr,
    bundled_fixture_dir,
    d_xin,
    d_xn,
    d_xtan,
    diff_symbols,
    iter_records,
    parse_rule,
    pi_plus_symbol,
    split_fields,
    substitute_p0_symbol,
    sphere_integrate,
    trace_symbol,
)

logger = logging.getLogger("wres_verifier.assembler")


THEOREM_CASES: dict[str, tuple[str, ...]] = {
    "T31": ("A_I", "A_II", "A_III", "B", "C"),
    "T32": ("A_I", "A_II", "A_III", "B", "C"),
    "T41": ("PSI",),
    "T42": ("PSI_TILDE",),
}
VARIANTS = ("fixture", "derived")

# printed pi+ image the alternate derived column reads instead of computing it
ALTERNATE_PROJECTION = {"T31": "AA38", "T41": "AA38", "T32": "C38", "T42": "C38"}

# (|alpha|, j, k) per case of the boundary-term template
CASE_INDICES = {
    "A_I": (1, 0, 0),
    "A_II": (0, 1, 0),
    "A_III": (0, 0, 1),
    "B": (0, 0, 0),
    "C": (0, 0, 0),
    "PSI": (0, 0, 0),
    "PSI_TILDE": (0, 0, 0),
}

_PI = ScalarAtom.PI
_VOL = ScalarAtom.VOL


def case_prefactor(case: str) -> GaussianRational:
    """(-i)^(|alpha|+j+k+1) / (alpha! (j+k+1)!)."""
    alpha, j, k = CASE_INDICES[case]
    return (-I) ** (alpha + j + k + 1) / (factorial(alpha) * factorial(j + k + 1))


def check_theorem(theorem: str, case: Optional[str] = None) -> str:
    theorem = theorem.upper()
    if theorem not in THEOREM_CASES:
        raise UnknownTheorem(f"Unknown theorem: {theorem}")
    if case is not None and case not in THEOREM_CASES[theorem]:
        raise UnknownTheorem(f"Unknown case {case} for {theorem}")
    return theorem


# --------------------------------------------------
# Geometric expressions
# --------------------------------------------------

def _pi_text(power: int) -> str:
    if power == 0:
        return ""
    return "pi" if power == 1 else f"pi^{power}"


def _magnitude_text(value: GaussianRational, tail: str) -> tuple[str, str]:
    """(sign, text) for ``value * tail`` where tail is a product like ``pi^2``."""
    re, im = value.re, value.im
    if re == 0 and im != 0:
        part, tail = im, "i" + (f"*{tail}" if tail else "")
    elif im == 0:
        part = re
    else:
        imag = "i" if abs(im) == 1 else f"{abs(im)}*i"
        inner = f"({re}{'+' if im > 0 else '-'}{imag})"
        return "+", inner + (f"*{tail}" if tail else "")
    sign = "-" if part < 0 else "+"
    mag = abs(part)
    head = [] if mag.numerator == 1 and tail else [str(mag.numerator)]
    body = "*".join(head + ([tail] if tail else []))
    if mag.denominator != 1:
        body += f"/{mag.denominator}"
    return sign, body


def _wrap(body: str) -> str:
    """Parenthesizes ``body`` when it has a top-level sum or quotient."""
    depth = 0
    for c in body:
        if c == "(":
            depth += 1
        elif c == ")":
            depth -= 1
        elif depth == 0 and c in "+-/":
            return f"({body})"
    return body


@dataclass(frozen=True)
class GeometricExpression:
    """Exact combination of geometric monomials; pi and Vol are ordinary atoms.

    ``conditional`` is set when a value depends on the configured p0 rule.
    """

    terms: tuple[tuple[Monomial, GaussianRational], ...] = ()
    conditional: bool = False
    notes: tuple[str, ...] = ()

    def __post_init__(self) -> None:
        merged: dict[Monomial, GaussianRational] = {}
        for monomial, coeff in self.terms:
            merged[monomial] = merged.get(monomial, ZERO) + GaussianRational.of(coeff)
        terms = tuple(
            (m, merged[m]) for m in sorted(merged, key=Monomial.sort_key) if not merged[m].is_zero()
        )
        object.__setattr__(self, "terms", terms)
        object.__setattr__(self, "notes", tuple(dict.fromkeys(self.notes)))

    def __add__(self, other: "GeometricExpression") -> "GeometricExpression":
        return GeometricExpression(
            self.terms + other.terms,
            self.conditional or other.conditional,
            self.notes + other.notes,
        )

    def __neg__(self) -> "GeometricExpression":
        return self.scale(-1)

    def __sub__(self, other: "GeometricExpression") -> "GeometricExpression":
        return self + (-other)

    def scale(self, factor: Any) -> "GeometricExpression":
        factor = GaussianRational.of(factor)
        return GeometricExpression(tuple((m, c * factor) for m, c in self.terms), self.conditional, self.notes)

    def is_zero(self) -> bool:
        return not self.terms

    def coefficient(self, monomial: Monomial) -> GaussianRational:
        return dict(self.terms).get(monomial, ZERO)

    def as_dict(self) -> dict[Monomial, GaussianRational]:
        return dict(self.terms)

    def same_value(self, other: "GeometricExpression") -> bool:
        return self.terms == other.terms

    def pi_powers(self) -> set[int]:
        return {m.degree(_PI) for m, _ in self.terms}

    def to_dict(self) -> dict[str, str]:
        return {m.to_text(): str(c) for m, c in self.terms}

    def __str__(self) -> str:
        return format_geometric(self)


def format_geometric(expr: GeometricExpression) -> str:
    """Human form; pi and Vol are factored out when every term carries the same power."""
    if expr.is_zero():
        return "0"
    pi_powers = expr.pi_powers()
    vol_powers = {m.degree(_VOL) for m, _ in expr.terms}
    if len(pi_powers) == 1 and vol_powers == {1}:
        power = pi_powers.pop()
        common = max((c for _, c in expr.terms), key=lambda c: (c.abs2(), c.sort_key()))
        sign, outer = _magnitude_text(common, _pi_text(power))
        head = ("-" if sign == "-" else "") + _wrap(outer) + "*" + ScalarAtom.VOL.display
        inner: list[tuple[str, str]] = []
        for monomial, coeff in expr.terms:
            rest = monomial.without(_PI).without(_VOL)
            s, text = _magnitude_text(coeff / common, "")
            atoms = rest.display()
            if text in ("", "1"):
                body = atoms
            else:
                body = f"{_wrap(text)}*{atoms}" if atoms != "1" else _wrap(text)
            inner.append((s, body))
        return f"{head}*( {_join(inner)} )"
    pieces = []
    for monomial, coeff in expr.terms:
        power = monomial.degree(_PI)
        s, scalar = _magnitude_text(coeff, _pi_text(power))
        rest = monomial.without(_PI).display()
        body = _wrap(scalar) if rest == "1" else (rest if scalar == "1" else f"{_wrap(scalar)}*{rest}")
        pieces.append((s, body))
    return _join(pieces)


def _join(pieces: Iterable[tuple[str, str]]) -> str:
    out = ""
    for sign, body in pieces:
        if not out:
            out = f"-{body}" if sign == "-" else body
        else:
            out += f" - {body}" if sign == "-" else f" + {body}"
    return out or "0"


# --------------------------------------------------
# Printed formulas
# --------------------------------------------------

@dataclass(frozen=True)
class PrintedTerm:
    coeff: str
    atoms: Monomial
    uses: Optional[str] = None

    def evaluate(self, n: int) -> tuple[Monomial, GaussianRational]:
        value = evaluate_constant(self.coeff, n)
        if self.uses:
            value = value * coefficient_value(self.uses, n)
        return self.atoms, value


@dataclass(frozen=True)
class PrintedSection:
    name: str
    anchor: str = ""
    terms: tuple[PrintedTerm, ...] = ()

    def evaluate(self, n: int) -> GeometricExpression:
        return GeometricExpression(tuple(t.evaluate(n) for t in self.terms))

    def uses(self) -> tuple[str, ...]:
        return tuple(dict.fromkeys(t.uses for t in self.terms if t.uses))


@dataclass(frozen=True)
class PrintedTheorem:
    theorem: str
    anchor: str
    sections: dict[str, PrintedSection]
    flags: tuple[str, ...] = ()

    def case(self, case: str) -> PrintedSection:
        if case not in self.sections:
            raise UnknownTheorem(f"{self.theorem} has no printed case {case}")
        return self.sections[case]

    @property
    def statement(self) -> PrintedSection:
        return self.case("statement")


def parse_printed(text: str, source: str = "<string>") -> PrintedTheorem:
    """Parses a ``*.printed`` file.

    Raises:
        FixtureFormatError: On unknown records or misplaced terms.
    """
    theorem: Optional[str] = None
    anchor = ""
    flags: list[str] = []
    sections: dict[str, dict[str, Any]] = {}
    current: Optional[dict[str, Any]] = None
    for line, keyword, rest in iter_records(text, source):
        if keyword == "theorem":
            theorem = rest.strip().upper()
        elif keyword == "section":
            kind, _, name = rest.partition(" ")
            if kind == "statement":
                name = "statement"
            elif kind != "case" or not name:
                raise FixtureFormatError("expected 'section case <TAG>' or 'section statement'", source, line)
            current = {"name": name.strip(), "anchor": "", "terms": []}
            sections[current["name"]] = current
        elif keyword == "anchor":
            value = _quoted(rest, source, line)
            if current is None:
                anchor = value
            else:
                current["anchor"] = value
        elif keyword == "flag":
            flags.append(_quoted(rest, source, line))
        elif keyword == "term":
            if current is None:
                raise FixtureFormatError("term outside a section", source, line)
            fields = split_fields(rest, source, line)
            if "coeff" not in fields:
                raise FixtureFormatError("term needs coeff=", source, line)
            try:
                atoms = Monomial.parse(fields.get("atoms", ""))
            except ValueError as exc:
                raise FixtureFormatError(str(exc), source, line) from exc
            current["terms"].append(PrintedTerm(fields["coeff"], atoms, fields.get("uses")))
        else:
            raise FixtureFormatError(f"unknown record '{keyword}'", source, line)
    if theorem is None:
        raise FixtureFormatError("missing 'theorem <TAG>' header", source)
    return PrintedTheorem(
        theorem,
        anchor,
        {k: PrintedSection(v["name"], v["anchor"], tuple(v["terms"])) for k, v in sections.items()},
        tuple(flags),
    )


# --------------------------------------------------
# Assembly
# --------------------------------------------------

def atom_ratios(printed: GeometricExpression, derived: GeometricExpression) -> tuple[list[str], Optional[GaussianRational]]:
    """Per-monomial printed/derived ratios, and the common factor when there is one."""
    printed_terms, derived_terms = printed.as_dict(), derived.as_dict()
    parts = []
    ratios = set()
    for monomial in sorted(set(printed_terms) | set(derived_terms), key=Monomial.sort_key):
        label = monomial.without(_PI).without(_VOL).display()
        if monomial not in derived_terms:
            parts.append(f"{label}: printed only")
        elif monomial not in printed_terms:
            parts.append(f"{label}: derived only")
        else:
            ratio = printed_terms[monomial] / derived_terms[monomial]
            ratios.add(ratio)
            parts.append(f"{label}: {ratio}")
    uniform = set(printed_terms) == set(derived_terms) and len(ratios) == 1
    return parts, ratios.pop() if uniform else None


def interior_term(n: int) -> GeometricExpression:
    """(2 pi)^(n/2)/(3 (n/2-1)!) [Ric - s g/2](X,Y) + (2 pi)^(n/2)/(4 (n/2-1)!) s g(X,Y)."""
    check_dimension(n)
    half = n // 2
    base = GaussianRational(2 ** half) / factorial(half - 1)
    return GeometricExpression((
        (Monomial(((ScalarAtom.RIC_XY, 1), (_PI, half))), base / 3),
        (Monomial(((ScalarAtom.S_G_XY, 1), (_PI, half))), base / 4),
    ))


@dataclass
class Assembler:
    """Evaluates case terms and theorem sums against one fixture corpus and p0 rule."""

    fixtures_dir: Optional[Path] = None
    p0_rule: str = DEFAULT_P0_RULE
    _printed: dict[str, PrintedTheorem] = field(default_factory=dict, init=False, repr=False)

    def __post_init__(self) -> None:
        self.fixtures_dir = Path(self.fixtures_dir) if self.fixtures_dir else bundled_fixture_dir()

    @cached_property
    def catalog(self) -> FixtureCatalog:
        return FixtureCatalog(self.fixtures_dir)

    def printed(self, theorem: str) -> PrintedTheorem:
        theorem = check_theorem(theorem)
        if theorem not in self._printed:
            path = Path(self.fixtures_dir) / f"{theorem}.printed"
            if not path.exists():
                path = bundled_fixture_dir() / f"{theorem}.printed"
            self._printed[theorem] = parse_printed(path.read_text(encoding="utf-8"), str(path))
        return self._printed[theorem]

    # ---------------- derived pipeline ----------------

    def _fixture(self, fixture_id: str, n: int) -> SymbolExpr:
        return self.catalog.load(fixture_id, n)

    def _pi_sigma0(self, n: int, alternate: bool) -> SymbolExpr:
        if alternate:
            return self._fixture("AA38", n)
        return pi_plus_symbol(self._fixture("L24_D2", n))

    def _pi_sigma1(self, n: int, alternate: bool) -> SymbolExpr:
        if alternate:
            return self._fixture("C38", n)
        return pi_plus_symbol(self._fixture("L24_D1", n))

    def projection_branches(self, theorem: str, n: int) -> list[dict[str, str]]:
        """Term rows where the printed pi+ image differs from the computed one."""
        theorem = check_theorem(theorem)
        project = self._pi_sigma0 if ALTERNATE_PROJECTION[theorem] == "AA38" else self._pi_sigma1
        return diff_symbols(project(n, False), project(n, True))

    def _factors(self, theorem: str, case: str, n: int, form: int, alternate: bool) -> tuple[SymbolExpr, SymbolExpr, GaussianRational]:
        """Returns (left, right, sign) so the integrand is sign * left * right.

        Form 2 moves the xi_n derivatives across the product by parts.
        """
        fx = self._fixture
        if theorem in ("T31", "T41"):
            leading = fx("L22_M2_POW", n)
            pi_sigma = self._pi_sigma0(n, alternate)
            if case == "A_II":
                moved = pi_plus_symbol(d_xn(fx("L24_D2", n)))
                if form == 1:
                    return moved, d_xin(leading, 2), ONE
                return d_xin(moved, 2), leading, ONE
            if case == "A_III":
                if form == 1:
                    return d_xin(pi_sigma, 1), d_xin(d_xn(leading), 1), ONE
                return d_xin(pi_sigma, 2), d_xn(leading), -ONE
            if case == "B":
                lower = fx("E43", n)
                if form == 1:
                    return pi_sigma, d_xin(lower, 1), ONE
                return d_xin(pi_sigma, 1), lower, -ONE
            if case == "C":
                projected = fx("E65", n)
                if form == 1:
                    return projected, d_xin(leading, 1), ONE
                return d_xin(projected, 1), leading, -ONE
            if case == "PSI":
                if form == 1:
                    return pi_sigma, d_xin(leading, 1), ONE
                return d_xin(pi_sigma, 1), leading, -ONE
        else:
            leading = fx("C7", n)
            pi_sigma = self._pi_sigma1(n, alternate)
            if case == "A_II":
                moved = pi_plus_symbol(d_xn(fx("L24_D1", n)))
                if form == 1:
                    return moved, d_xin(leading, 2), ONE
                return d_xin(moved, 2), leading, ONE
            if case == "A_III":
                if form == 1:
                    return d_xin(pi_sigma, 1), d_xin(d_xn(leading), 1), ONE
                return d_xin(pi_sigma, 2), d_xn(leading), -ONE
            if case == "B":
                rule = parse_rule(self.p0_rule, n)
                projected = substitute_p0_symbol(fx("C21_M1", n), rule)
                if form == 1:
                    return projected, d_xin(leading, 1), ONE
                return d_xin(projected, 1), leading, -ONE
            if case == "C":
                lower = fx("C24", n)
                if form == 1:
                    return pi_sigma, d_xin(lower, 1), ONE
                return d_xin(pi_sigma, 1), lower, -ONE
            if case == "PSI_TILDE":
                if form == 1:
                    return pi_sigma, d_xin(leading, 1), ONE
                return d_xin(pi_sigma, 1), leading, -ONE
        raise UnknownTheorem(f"Unknown case {case} for {theorem}")

    def integrand(self, theorem: str, case: str, n: int, form: int = 1, alternate: bool = False) -> SymbolExpr:
        """Symbol-level integrand of a case, prefactor included."""
        theorem = check_theorem(theorem, case)
        if case == "A_I":
            # tangential derivatives vanish at the boundary point
            return d_xtan(self._fixture("L24_D2" if theorem == "T31" else "L24_D1", n))
        left, right, sign = self._factors(theorem, case, n, form, alternate)
        logger.debug("%s %s n=%d form=%d: %d x %d terms", theorem, case, n, form, len(left), len(right))
        return (left * right).scale(sign * case_prefactor(case))

    def _integrate(self, integrand: SymbolExpr, theorem: str, n: int) -> GeometricExpression:
        rank = 2 ** (n // 2 - 1) if theorem in ("T41", "T42") else None
        for residual in integrand.residuals:
            logger.warning("residual left out of the pipeline: %s", residual)
        traced = trace_symbol(integrand, n, rank)
        integrated = sphere_integrate(traced, n)
        pi = Monomial(((_PI, 1),))
        terms = []
        for term in integrated.terms:
            value = contour_integral_upper(term.radial, closed=True)
            terms.append((term.atoms * pi, value.coefficient))
        return GeometricExpression(tuple(terms), integrand.has_p0(), integrand.flags)

    def case_term(
        self,
        case: str,
        theorem: str,
        n: int,
        variant: str = "fixture",
        form: int = 1,
        alternate: bool = False,
    ) -> GeometricExpression:
        """Exact value of one case.

        Raises:
            UnknownTheorem: For an unknown theorem/case pair.
            ValueError: For an unknown variant or an invalid dimension.
        """
        theorem = check_theorem(theorem, case)
        check_dimension(n)
        if variant == "fixture":
            return self.printed(theorem).case(case).evaluate(n)
        if variant != "derived":
            raise ValueError(f"variant must be one of {VARIANTS}, got {variant!r}")
        return self._integrate(self.integrand(theorem, case, n, form, alternate), theorem, n)

    def boundary_term(self, theorem: str, n: int, variant: str = "fixture", alternate: bool = False) -> GeometricExpression:
        theorem = check_theorem(theorem)
        total = GeometricExpression()
        for case in THEOREM_CASES[theorem]:
            total = total + self.case_term(case, theorem, n, variant, alternate=alternate)
        return total

    def statement(self, theorem: str, n: int) -> GeometricExpression:
        check_dimension(n)
        return self.printed(theorem).statement.evaluate(n)

    # ---------------- reconciliation ----------------

    def _case_finding(
        self,
        theorem: str,
        n: int,
        case: dict[str, Any],
        fixture_value: GeometricExpression,
        derived_value: GeometricExpression,
    ) -> dict[str, Any]:
        parts, factor = atom_ratios(fixture_value, derived_value)
        message = "printed/derived per atom: " + ", ".join(parts)
        if factor is not None:
            message += f"; printed case = {factor} * derived case"
        return {
            "kind": "case-mismatch",
            "subject": f"{theorem}(n={n}) {case['case']}",
            "anchor": case["anchor"],
            "message": message,
            "conditional": case["conditional"],
        }

    def _branch_finding(
        self,
        theorem: str,
        n: int,
        derived: GeometricExpression,
        alternate: GeometricExpression,
    ) -> dict[str, Any]:
        fixture_id = ALTERNATE_PROJECTION[theorem]
        rows = "; ".join(
            f"{Monomial.parse(r['atoms']).display()} [{r['xi']} {r['word']}]: computed {r['derived']}, printed {r['printed']}"
            for r in self.projection_branches(theorem, n)
        )
        moved = sorted({m for m, _ in (derived - alternate).terms}, key=Monomial.sort_key)
        return {
            "kind": f"{fixture_id.lower()}-branch",
            "subject": f"{theorem}(n={n}) {fixture_id}",
            "anchor": self.catalog.get(fixture_id).anchor,
            "message": (
                f"printed pi+ image differs from the computed one on {rows}; "
                "derived columns differ on " + ", ".join(m.without(_PI).without(_VOL).display() for m in moved)
            ),
            "conditional": derived.conditional or alternate.conditional,
        }

    def reconcile(self, theorem: str, n: int, alternate: bool = True) -> dict[str, Any]:
        """Three-way comparison of fixture path, derived path and printed statement."""
        theorem = check_theorem(theorem)
        printed = self.printed(theorem)
        columns: dict[str, GeometricExpression] = {
            "fixture": self.boundary_term(theorem, n, "fixture"),
            "derived": self.boundary_term(theorem, n, "derived"),
        }
        if alternate:
            columns["derived_alternate"] = self.boundary_term(theorem, n, "derived", alternate=True)
        columns["statement"] = self.statement(theorem, n)
        conditional = any(c.conditional for c in columns.values())

        monomials = sorted({m for expr in columns.values() for m, _ in expr.terms}, key=Monomial.sort_key)
        names = list(columns)
        entries = []
        for monomial in monomials:
            values = {name: columns[name].coefficient(monomial) for name in names}
            disagree = [
                f"{a}/{b}" for k, a in enumerate(names) for b in names[k + 1:] if values[a] != values[b]
            ]
            entry: dict[str, Any] = {"atoms": monomial.to_text(), "display": monomial.display(), "disagree": disagree}
            entry.update({name: str(value) for name, value in values.items()})
            entries.append(entry)

        cases = []
        case_values: dict[str, tuple[GeometricExpression, GeometricExpression]] = {}
        for case in THEOREM_CASES[theorem]:
            fixture_value = self.case_term(case, theorem, n, "fixture")
            derived_value = self.case_term(case, theorem, n, "derived")
            case_values[case] = (fixture_value, derived_value)
            cases.append({
                "case": case,
                "anchor": printed.case(case).anchor,
                "fixture": str(fixture_value),
                "derived": str(derived_value),
                "agree": fixture_value.same_value(derived_value),
                "conditional": derived_value.conditional,
            })

        findings = []
        for entry in entries:
            if entry["disagree"]:
                findings.append({
                    "kind": "reconcile",
                    "subject": f"{theorem}(n={n}) {entry['display']}",
                    "anchor": printed.anchor,
                    "message": "columns disagree: " + ", ".join(entry["disagree"]),
                    "conditional": conditional,
                })
        for case in cases:
            if not case["agree"]:
                findings.append(self._case_finding(theorem, n, case, *case_values[case["case"]]))
        if alternate and not columns["derived"].same_value(columns["derived_alternate"]):
            findings.append(self._branch_finding(theorem, n, columns["derived"], columns["derived_alternate"]))
        for note in printed.flags:
            findings.append({"kind": "printed-note", "subject": theorem, "anchor": printed.anchor, "message": note, "conditional": False})
        for note in sorted(set(columns["derived"].notes)):
            findings.append({"kind": "pipeline-note", "subject": theorem, "anchor": printed.anchor, "message": note, "conditional": False})

        logger.info("%s n=%d: %d atoms, %d disagreements", theorem, n, len(entries), sum(1 for e in entries if e["disagree"]))
        return {
            "kind": "reconcile",
            "theorem": theorem,
            "n": n,
            "columns": names,
            "values": {name: str(expr) for name, expr in columns.items()},
            "entries": entries,
            "diff": [e for e in entries if e["disagree"]],
            "cases": cases,
            "conditional_on_p0_rule": conditional,
            "findings": findings,
        }


_ASSEMBLERS: dict[tuple[Optional[str], str], Assembler] = {}


def default_assembler(fixtures_dir: Optional[Union[str, Path]] = None, p0_rule: str = DEFAULT_P0_RULE) -> Assembler:
    key = (str(fixtures_dir) if fixtures_dir else None, p0_rule)
    if key not in _ASSEMBLERS:
        _ASSEMBLERS[key] = Assembler(Path(fixtures_dir) if fixtures_dir else None, p0_rule)
    return _ASSEMBLERS[key]


def case_term(case: str, theorem: str, n: int, variant: str = "fixture", form: int = 1) -> GeometricExpression:
    return default_assembler().case_term(case, theorem, n, variant, form)


def boundary_term(theorem: str, n: int, variant: str = "fixture") -> GeometricExpression:
    return default_assembler().boundary_term(theorem, n, variant)


def reconcile(theorem: str, n: int, alternate: bool = True) -> dict[str, Any]:
    return default_assembler().reconcile(theorem, n, alternate)
