"""Catalog of named boundary coefficients and their three-way verification.

Each coefficient is defined by a derivative ``[N(xi)/(xi+i)^p]^(m)`` at
``xi = i`` and has a printed closed form over generalized binomials. The
numeric path evaluates ``m! * Res_{xi=i} g/(xi-i)^(m+1)`` by trapezoidal
quadrature on a circle, independently of both exact paths.
"""

from __future__ import annotations

import logging
import sys
from dataclasses import dataclass
from functools import lru_cache
from importlib import resources
from pathlib import Path
from typing import Any, Iterable, Optional

from mpmath import mp, mpf

from wres_verifier.arith import I, BigComplexFloat, GaussianRational, factorial
from wres_verifier.errors import UnknownCoefficient
from wres_verifier.parser import evaluate_constant, parse_expression
from wres_verifier.ratfunc import RatFuncXi, contour_residue_numeric, derivative_at

if sys.version_info >= (3, 11):
    import tomllib
else:  # pragma: no cover
    import tomli as tomllib

logger = logging.getLogger("wres_verifier.coeffs")

# relative, or absolute when the exact value is zero
NUMERIC_TOLERANCE_EXPONENT = -30

# closed forms whose agreement with the defining derivative is part of engine consistency
HAND_CHECKED = ("B0", "M0", "H0")


@dataclass(frozen=True)
class CoefficientSpec:
    """One catalog entry; every field except ``name`` is expression text in ``n``."""

    name: str
    numerator: str
    pole_power: str
    order: str
    closed: str
    anchor: str = ""
    closed_alternate: Optional[str] = None

    def integrand(self, n: int) -> RatFuncXi:
        """Returns N(xi)/(xi+i)^p at dimension ``n``."""
        return parse_expression(f"({self.numerator})/(xi+i)^({self.pole_power})", n)

    def derivative_order(self, n: int) -> int:
        value = evaluate_constant(self.order, n)
        if not value.is_integer() or value.re < 0:
            raise ValueError(f"{self.name}: derivative order {value} at n={n} is not a non-negative integer")
        return int(value.re)


def check_dimension(n: int) -> int:
    if not isinstance(n, int) or isinstance(n, bool) or n < 4 or n % 2:
        raise ValueError(f"n must be an even integer >= 4, got {n!r}")
    return n


def _catalog_text(path: Optional[Path]) -> str:
    if path is not None:
        return Path(path).read_text(encoding="utf-8")
    return resources.files("wres_verifier").joinpath("data", "coefficients.toml").read_text(encoding="utf-8")


@lru_cache(maxsize=4)
def load_catalog(path: Optional[Path] = None) -> dict[str, CoefficientSpec]:
    """Reads the coefficient catalog (bundled by default)."""
    raw = tomllib.loads(_catalog_text(path))
    catalog = {}
    for name, entry in raw.items():
        catalog[name] = CoefficientSpec(
            name=name,
            numerator=entry["numerator"],
            pole_power=entry["pole_power"],
            order=entry["order"],
            closed=entry["closed"],
            anchor=entry.get("anchor", ""),
            closed_alternate=entry.get("closed_alternate"),
        )
    logger.debug("loaded %d coefficients", len(catalog))
    return catalog


def coefficient_names() -> list[str]:
    return sorted(load_catalog())


def get_spec(name: str) -> CoefficientSpec:
    catalog = load_catalog()
    if name not in catalog:
        raise UnknownCoefficient(f"Unknown coefficient: {name}")
    return catalog[name]


# --------------------------------------------------
# The three evaluation paths
# --------------------------------------------------

def coefficient_defining(name: str, n: int) -> GaussianRational:
    """Exact value of the defining derivative.

    Raises:
        UnknownCoefficient: If ``name`` is not cataloged.
    """
    spec = get_spec(name)
    check_dimension(n)
    return derivative_at(spec.integrand(n), spec.derivative_order(n), I)


def coefficient_closed_form(name: str, n: int, alternate: bool = False) -> Optional[GaussianRational]:
    """Exact value of the printed closed form; None if no alternate reading exists."""
    spec = get_spec(name)
    check_dimension(n)
    text = spec.closed_alternate if alternate else spec.closed
    if text is None:
        return None
    return evaluate_constant(text, n)


def coefficient_numeric(name: str, n: int, precision_bits: int = 256, nodes: int = 4096) -> BigComplexFloat:
    spec = get_spec(name)
    check_dimension(n)
    m = spec.derivative_order(n)
    integrand = spec.integrand(n) * RatFuncXi.pole(I, m + 1)
    residue = contour_residue_numeric(integrand, precision_bits, nodes)
    with mp.workprec(precision_bits):
        return BigComplexFloat.from_mpc(residue.to_mpc() * factorial(m), precision_bits)


@dataclass(frozen=True)
class VerificationRecord:
    """Outcome of the three-way check for one (name, n)."""

    name: str
    n: int
    value_defining: GaussianRational
    value_closed: GaussianRational
    value_numeric: BigComplexFloat
    relative_error: Any
    defining_vs_numeric_ok: bool
    closed_matches_defining: bool
    value_closed_alternate: Optional[GaussianRational] = None
    alternate_matches_defining: Optional[bool] = None
    anchor: str = ""

    def sort_key(self) -> tuple[str, int]:
        return (self.name, self.n)

    def to_dict(self) -> dict[str, Any]:
        out: dict[str, Any] = {
            "kind": "coefficient",
            "name": self.name,
            "n": self.n,
            "defining": str(self.value_defining),
            "closed": str(self.value_closed),
            "numeric": str(self.value_numeric),
            "relative_error": mp.nstr(self.relative_error, 5),
            "defining_vs_numeric_ok": self.defining_vs_numeric_ok,
            "closed_matches_defining": self.closed_matches_defining,
            "anchor": self.anchor,
        }
        if self.value_closed_alternate is not None:
            out["closed_alternate"] = str(self.value_closed_alternate)
            out["alternate_matches_defining"] = self.alternate_matches_defining
        return out


def verify_coefficient(name: str, n: int, precision_bits: int = 256, nodes: int = 4096) -> VerificationRecord:
    """Evaluates all paths; mismatches are data, never exceptions."""
    spec = get_spec(name)
    defining = coefficient_defining(name, n)
    closed = coefficient_closed_form(name, n)
    alternate = coefficient_closed_form(name, n, alternate=True)
    numeric = coefficient_numeric(name, n, precision_bits, nodes)
    error = numeric.relative_error(defining)
    with mp.workprec(precision_bits):
        ok = bool(error <= mpf(10) ** NUMERIC_TOLERANCE_EXPONENT)
    record = VerificationRecord(
        name=name,
        n=n,
        value_defining=defining,
        value_closed=closed,
        value_numeric=numeric,
        relative_error=error,
        defining_vs_numeric_ok=ok,
        closed_matches_defining=closed == defining,
        value_closed_alternate=alternate,
        alternate_matches_defining=None if alternate is None else alternate == defining,
        anchor=spec.anchor,
    )
    logger.info(
        "%s n=%d defining=%s closed_match=%s numeric_ok=%s",
        name, n, defining, record.closed_matches_defining, ok,
    )
    return record


def verify_coefficients(
    names: Optional[Iterable[str]] = None,
    ns: Iterable[int] = (4,),
    precision_bits: int = 256,
    nodes: int = 4096,
) -> list[VerificationRecord]:
    """Runs :func:`verify_coefficient` over a grid, sorted by (name, n).

    mpmath keeps its precision in a process-wide context, so the grid runs
    sequentially.
    """
    names = sorted(names) if names is not None else coefficient_names()
    records = [verify_coefficient(name, n, precision_bits, nodes) for name in names for n in sorted(set(ns))]
    return sorted(records, key=VerificationRecord.sort_key)


def coefficient_findings(records: Iterable[VerificationRecord]) -> list[dict[str, Any]]:
    """Discrepancies between printed and computed values for a batch of records."""
    findings = []
    for record in records:
        subject = f"{record.name}(n={record.n})"
        if not record.closed_matches_defining:
            message = f"printed closed form gives {record.value_closed}, defining derivative gives {record.value_defining}"
            if record.alternate_matches_defining:
                message += "; the alternate reading matches"
            findings.append({"kind": "closed-form", "subject": subject, "anchor": record.anchor, "message": message})
        if record.value_closed_alternate is not None and record.value_closed_alternate != record.value_closed:
            findings.append({
                "kind": "internal-inconsistency",
                "subject": subject,
                "anchor": record.anchor,
                "message": (
                    f"two printed readings disagree: {record.value_closed} and {record.value_closed_alternate}; "
                    f"matching reading: {_matching(record)}"
                ),
            })
    return findings


def _matching(record: VerificationRecord) -> str:
    if record.closed_matches_defining:
        return "primary"
    if record.alternate_matches_defining:
        return "alternate"
    return "neither"


def engine_consistent(records: Iterable[VerificationRecord]) -> bool:
    """True when every numeric path agrees and the hand-checked closed forms hold."""
    return all(
        r.defining_vs_numeric_ok and (r.name not in HAND_CHECKED or r.closed_matches_defining)
        for r in records
    )


@lru_cache(maxsize=512)
def coefficient_value(name: str, n: int) -> GaussianRational:
    """Cached defining value; used by the printed-formula evaluator."""
    return coefficient_defining(name, n)
