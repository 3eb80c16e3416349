"""Verification sessions: one EngineConfig plus the engine objects built from it.

The CLI drives a single :class:`Session`; the MCP server keeps several behind
``ses_<uuid>`` IDs in a :class:`SessionManager`.
"""

from __future__ import annotations

import logging
from typing import Any, Iterable, Optional

from wres_verifier.assembler import THEOREM_CASES, Assembler, check_theorem, interior_term
from wres_verifier.checks import check_findings, run_checks
from wres_verifier.coeffs import (
    coefficient_closed_form,
    coefficient_defining,
    coefficient_findings,
    engine_consistent,
    get_spec,
    verify_coefficients,
)
from wres_verifier.config import EngineConfig
from wres_verifier.core.registry import ObjectRegistry
from wres_verifier.parser import evaluate_constant, parse_expression
from wres_verifier.ratfunc import format_ratfunc, pi_plus, residue
from wres_verifier.report import ReportDocument

# pylint: disable=line-too-long

logger = logging.getLogger("wres_verifier.core.session_manager")

BOUNDARY_VARIANTS = ("fixture", "derived", "both")


def _value(subject: str, value: Any, **extra: Any) -> dict[str, Any]:
    return {"kind": "value", "subject": subject, "value": str(value), **extra}


class Session:
    """Engine front end bound to one configuration.

    Every report-producing method returns a :class:`ReportDocument` whose
    ``config`` block carries the p0 rule and its provenance.
    """

    def __init__(self, config: Optional[EngineConfig] = None) -> None:
        self.config = config or EngineConfig()
        self.assembler = Assembler(self.config.fixtures_dir, self.config.p0_rule)

    def document(self) -> ReportDocument:
        return ReportDocument(config=self.config.report_config())

    # --------------------------------------------------
    # Coefficients
    # --------------------------------------------------

    def coefficient(self, name: str, n: int, closed: bool = False) -> ReportDocument:
        doc = self.document()
        spec = get_spec(name)
        value = coefficient_closed_form(name, n) if closed else coefficient_defining(name, n)
        doc.records.append(_value(f"{name}(n={n})", value, name=name, n=n, anchor=spec.anchor))
        return doc

    def verify_coefficients(self, names: Optional[Iterable[str]], ns: Iterable[int]) -> tuple[ReportDocument, bool]:
        records = verify_coefficients(names, ns, self.config.precision_bits, self.config.nodes)
        doc = self.document()
        doc.records.extend(r.to_dict() for r in records)
        doc.add_findings(coefficient_findings(records))
        consistent = engine_consistent(records)
        if not consistent:
            logger.error("engine inconsistency: numeric and exact coefficient paths disagree")
        return doc, consistent

    # --------------------------------------------------
    # Rational functions
    # --------------------------------------------------

    def pi_plus(self, text: str) -> ReportDocument:
        doc = self.document()
        doc.records.append(_value(f"pi+[{text}]", format_ratfunc(pi_plus(parse_expression(text)))))
        return doc

    def residue(self, text: str, root: str = "i") -> ReportDocument:
        doc = self.document()
        doc.records.append(_value(f"Res_{{xi={root}}}[{text}]", residue(parse_expression(text), evaluate_constant(root))))
        return doc

    # --------------------------------------------------
    # Boundary and interior terms
    # --------------------------------------------------

    def boundary(self, theorem: str, n: int, variant: str = "fixture", cases: bool = False) -> ReportDocument:
        theorem = check_theorem(theorem)
        if variant not in BOUNDARY_VARIANTS:
            raise ValueError(f"variant must be one of {BOUNDARY_VARIANTS}, got {variant!r}")
        doc = self.document()
        variants = ("fixture", "derived") if variant == "both" else (variant,)
        for v in variants:
            if cases:
                for case in THEOREM_CASES[theorem]:
                    value = self.assembler.case_term(case, theorem, n, v)
                    doc.records.append(_value(f"{theorem}[{case}](n={n}) {v}", value, terms=value.to_dict(), conditional=value.conditional))
            value = self.assembler.boundary_term(theorem, n, v)
            doc.records.append(_value(f"{theorem}(n={n}) {v}", value, terms=value.to_dict(), conditional=value.conditional))
            if v == "derived" and self.config.aa38_alternate:
                alt = self.assembler.boundary_term(theorem, n, v, alternate=True)
                doc.records.append(_value(f"{theorem}(n={n}) derived_alternate", alt, terms=alt.to_dict(), conditional=alt.conditional))
        return doc

    def interior(self, n: int) -> ReportDocument:
        doc = self.document()
        value = interior_term(n)
        doc.records.append(_value(f"interior(n={n})", value, terms=value.to_dict()))
        return doc

    def reconcile(self, theorem: str, n: int) -> ReportDocument:
        doc = self.document()
        record = self.assembler.reconcile(theorem, n, alternate=self.config.aa38_alternate)
        findings = record.pop("findings")
        doc.records.append(record)
        doc.add_findings(findings)
        return doc

    # --------------------------------------------------
    # Fixture corpus
    # --------------------------------------------------

    def list_fixtures(self) -> list[dict[str, Any]]:
        catalog = self.assembler.catalog
        return [
            {"id": fid, "anchor": catalog.get(fid).anchor, "terms": len(catalog.get(fid).terms)}
            for fid in catalog.ids()
        ]

    def show_fixture(self, fixture_id: str) -> str:
        return self.assembler.catalog.get(fixture_id).to_text()

    def fixture_checks(self, n: int = 4) -> ReportDocument:
        results = run_checks(n, self.assembler.catalog)
        doc = self.document()
        doc.records.extend(r.to_dict() for r in results)
        doc.add_findings(check_findings(results))
        return doc


class SessionManager:
    """Registry-backed session store for the MCP server."""

    def __init__(self, base: Optional[EngineConfig] = None) -> None:
        self.registry = ObjectRegistry()
        self.base = base or EngineConfig()
        self._default: Optional[Session] = None

    def open_session(self, **overrides: Any) -> str:
        """Creates a session from the base config updated with ``overrides``.

        Raises:
            pydantic.ValidationError: If an override is invalid.
        """
        values = self.base.model_dump()
        values.update({k: v for k, v in overrides.items() if v is not None})
        session = Session(EngineConfig.model_validate(values))
        sid = self.registry.put(session, prefix="ses")
        logger.info("opened %s", sid)
        return sid

    def close_session(self, session_id: str) -> bool:
        return self.registry.delete(session_id)

    def get_session(self, session_id: Optional[str] = None) -> Session:
        """Returns the named session, or the shared one on the base config."""
        if session_id is None:
            if self._default is None:
                self._default = Session(self.base)
            return self._default
        return self.registry.get(session_id, Session)
