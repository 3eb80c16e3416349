"""Tool registrations for the verification MCP server."""

# pylint: disable=missing-function-docstring, line-too-long

from __future__ import annotations

from importlib import resources
from typing import Any, Optional
import logging

from wres_verifier import models
from wres_verifier.core.session_manager import SessionManager
from wres_verifier.prompts.prompts import RECONCILE_PROMPT, VERIFICATION_WORKFLOW_PROMPT
from wres_verifier.report import ReportDocument

logger = logging.getLogger("wres_verifier.tools")

CONVENTIONS_URI = "wres://conventions"


def _report(doc: ReportDocument, ok: bool = True) -> dict[str, Any]:
    return models.ReportOut(**doc.model_dump(mode="json"), ok=ok).model_dump()


def register_tools(mcp: Any, manager: SessionManager) -> None:
    """
    Register MCP tools on a FastMCP instance.
    """

    # --------------------------------------------------
    # Sessions
    # --------------------------------------------------

    @mcp.tool()
    async def open_session(
        p0_rule: Optional[str] = None,
        precision_bits: Optional[int] = None,
        nodes: Optional[int] = None,
        aa38_alternate: Optional[bool] = None,
        fixtures_dir: Optional[str] = None,
    ) -> dict[str, Any]:
        req = models.OpenSessionIn(
            p0_rule=p0_rule, precision_bits=precision_bits, nodes=nodes,
            aa38_alternate=aa38_alternate, fixtures_dir=fixtures_dir,
        )
        sid = manager.open_session(**req.model_dump())
        return models.OpenSessionOut(session_id=sid).model_dump()

    @mcp.tool()
    async def close_session(session_id: str) -> dict[str, Any]:
        req = models.SessionIdIn(session_id=session_id)
        return {"ok": manager.close_session(req.session_id)}

    # --------------------------------------------------
    # Coefficients and rational functions
    # --------------------------------------------------

    @mcp.tool()
    async def coefficient(name: str, n: int, closed: bool = False, session_id: Optional[str] = None) -> dict[str, Any]:
        req = models.CoefficientIn(name=name, n=n, closed=closed, session_id=session_id)
        return _report(manager.get_session(req.session_id).coefficient(req.name, req.n, req.closed))

    @mcp.tool()
    async def verify_coefficients(ns: Optional[list[int]] = None, names: Optional[list[str]] = None, session_id: Optional[str] = None) -> dict[str, Any]:
        req = models.VerifyCoefficientsIn(ns=ns or [4], names=names, session_id=session_id)
        doc, consistent = manager.get_session(req.session_id).verify_coefficients(req.names, req.ns)
        return _report(doc, ok=consistent)

    @mcp.tool()
    async def pi_plus(text: str) -> dict[str, Any]:
        req = models.ExpressionIn(text=text)
        return _report(manager.get_session().pi_plus(req.text))

    @mcp.tool()
    async def residue(text: str, root: str = "i") -> dict[str, Any]:
        req = models.ResidueIn(text=text, root=root)
        return _report(manager.get_session().residue(req.text, req.root))

    # --------------------------------------------------
    # Boundary terms
    # --------------------------------------------------

    @mcp.tool()
    async def boundary(theorem: str, n: int, variant: str = "fixture", cases: bool = False, session_id: Optional[str] = None) -> dict[str, Any]:
        req = models.BoundaryIn(theorem=theorem.upper(), n=n, variant=variant, cases=cases, session_id=session_id)
        return _report(manager.get_session(req.session_id).boundary(req.theorem, req.n, req.variant, req.cases))

    @mcp.tool()
    async def interior(n: int, session_id: Optional[str] = None) -> dict[str, Any]:
        req = models.InteriorIn(n=n, session_id=session_id)
        return _report(manager.get_session(req.session_id).interior(req.n))

    @mcp.tool()
    async def reconcile(theorem: str, n: int, session_id: Optional[str] = None) -> dict[str, Any]:
        req = models.ReconcileIn(theorem=theorem.upper(), n=n, session_id=session_id)
        logger.info("reconcile %s n=%d", req.theorem, req.n)
        return _report(manager.get_session(req.session_id).reconcile(req.theorem, req.n))

    # --------------------------------------------------
    # Fixture corpus
    # --------------------------------------------------

    @mcp.tool()
    async def list_fixtures(session_id: Optional[str] = None) -> dict[str, Any]:
        req = models.ListFixturesIn(session_id=session_id)
        return models.ListFixturesOut(fixtures=manager.get_session(req.session_id).list_fixtures()).model_dump()

    @mcp.tool()
    async def show_fixture(fixture_id: str, session_id: Optional[str] = None) -> dict[str, Any]:
        req = models.FixtureIdIn(fixture_id=fixture_id, session_id=session_id)
        text = manager.get_session(req.session_id).show_fixture(req.fixture_id)
        return models.ShowFixtureOut(fixture_id=req.fixture_id, text=text).model_dump()

    @mcp.tool()
    async def fixture_checks(n: int = 4, session_id: Optional[str] = None) -> dict[str, Any]:
        req = models.FixtureChecksIn(n=n, session_id=session_id)
        return _report(manager.get_session(req.session_id).fixture_checks(req.n))

    # --------------------------------------------------
    # Resource and prompt
    # --------------------------------------------------

    @mcp.resource(CONVENTIONS_URI)
    def conventions() -> str:
        return resources.files("wres_verifier").joinpath("resources", "conventions.md").read_text(encoding="utf-8")

    @mcp.prompt()
    def verification_workflow() -> str:
        return VERIFICATION_WORKFLOW_PROMPT

    @mcp.prompt()
    def reconcile_theorem() -> str:
        return RECONCILE_PROMPT
