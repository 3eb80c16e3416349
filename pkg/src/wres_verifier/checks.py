"""Recomputes fixture intermediates from their predecessors and diffs them."""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from typing import Any, Callable, Optional

from wres_verifier.errors import UnsupportedDerivative
from wres_verifier.symbols import (
    FixtureCatalog,
    SymbolExpr,
    compose_leading,
    d_xin,
    d_xn,
    default_catalog,
    diff_symbols,
    pi_plus_symbol,
)

logger = logging.getLogger("wres_verifier.checks")

Operation = Callable[[SymbolExpr], SymbolExpr]

OPERATIONS: dict[str, Operation] = {
    "pi_plus": pi_plus_symbol,
    "d_xn": d_xn,
    "d_xin": lambda e: d_xin(e, 1),
    "d_xin2": lambda e: d_xin(e, 2),
}


@dataclass(frozen=True)
class FixtureCheck:
    source: str
    operation: str
    target: str
    partner: Optional[str] = None  # right factor for "compose"
    even_only: bool = False

    @property
    def name(self) -> str:
        if self.operation == "compose":
            return f"{self.source}*{self.partner}->{self.target}"
        return f"{self.operation}({self.source})->{self.target}"


CHECKS: tuple[FixtureCheck, ...] = (
    FixtureCheck("L24_D2", "pi_plus", "AA38"),
    FixtureCheck("L24_D2", "d_xn", "B27"),
    FixtureCheck("B27", "pi_plus", "B28"),
    FixtureCheck("AA38", "d_xin2", "MMMMM"),
    FixtureCheck("AA38", "d_xin", "E45"),
    FixtureCheck("L22_M2_POW", "d_xin2", "B237"),
    FixtureCheck("L22_M2_POW", "d_xn", "E37"),
    FixtureCheck("L22_M2_POW", "d_xin", "E62"),
    FixtureCheck("L24_D1", "d_xn", "C8"),
    FixtureCheck("L24_D1", "pi_plus", "C38"),
    FixtureCheck("C38", "d_xin", "C25"),
    FixtureCheck("C38", "d_xin2", "C14", even_only=True),
    FixtureCheck("C7", "d_xn", "C13"),
    FixtureCheck("C7", "d_xin", "C20"),
    FixtureCheck("E65", "pi_plus", "E65"),
    FixtureCheck("L21_S2", "compose", "L24_D2", partner="L22_M2"),
    FixtureCheck("L21_S2", "compose", "L24_D1", partner="L23_M1"),
)


@dataclass
class CheckResult:
    check: FixtureCheck
    n: int
    status: str  # ok | mismatch | underivable
    anchor: str = ""
    rows: list[dict[str, str]] = field(default_factory=list)
    message: str = ""

    def to_dict(self) -> dict[str, Any]:
        return {
            "kind": "fixture-check",
            "check": self.check.name,
            "n": self.n,
            "status": self.status,
            "anchor": self.anchor,
            "differences": self.rows,
            "message": self.message,
        }


def run_check(check: FixtureCheck, n: int = 4, catalog: Optional[FixtureCatalog] = None) -> CheckResult:
    catalog = catalog or default_catalog()
    target = catalog.get(check.target)
    source = catalog.load(check.source, n)
    try:
        if check.operation == "compose":
            derived = compose_leading(source, catalog.load(check.partner, n))
        else:
            derived = OPERATIONS[check.operation](source)
    except UnsupportedDerivative as exc:
        logger.warning("%s: %s", check.name, exc)
        return CheckResult(check, n, "underivable", target.anchor, message=str(exc))
    rows = diff_symbols(derived, target.instantiate(n), check.even_only)
    if not rows:
        logger.debug("%s n=%d ok", check.name, n)
        return CheckResult(check, n, "ok", target.anchor)
    message = f"{len(rows)} term(s) differ between the recomputation and the printed {check.target}"
    logger.warning("%s n=%d: %s", check.name, n, message)
    return CheckResult(check, n, "mismatch", target.anchor, rows, message)


def run_checks(n: int = 4, catalog: Optional[FixtureCatalog] = None, names: Optional[list[str]] = None) -> list[CheckResult]:
    selected = [c for c in CHECKS if names is None or c.name in names or c.target in names]
    return [run_check(c, n, catalog) for c in selected]


def check_findings(results: list[CheckResult]) -> list[dict[str, Any]]:
    findings = []
    for result in results:
        if result.status == "ok":
            continue
        findings.append({
            "kind": f"fixture-{result.status}",
            "subject": f"{result.check.name}(n={result.n})",
            "anchor": result.anchor,
            "message": result.message,
        })
    return findings
