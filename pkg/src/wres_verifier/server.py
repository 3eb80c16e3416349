"""Create and configure the verification MCP server."""
from __future__ import annotations

import logging
from typing import Optional

from mcp.server.fastmcp.server import FastMCP

from wres_verifier.config import EngineConfig
from wres_verifier.core.session_manager import SessionManager
from wres_verifier import tools

logger = logging.getLogger("wres_verifier.server")


def create_app(config: Optional[EngineConfig] = None) -> FastMCP:
    """Builds a FastMCP app whose sessions default to ``config``."""
    app = FastMCP("wres-verifier")
    manager = SessionManager(config)
    tools.register_tools(app, manager)
    logger.debug("registered tools, default p0 rule %r", manager.base.p0_rule)
    return app
