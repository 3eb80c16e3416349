"""Pydantic models for the MCP tool layer.

All models forbid extra fields so tool inputs stay strict.
"""
from typing import Any, Literal, Optional

from pydantic import BaseModel, ConfigDict, Field, field_validator

# pylint: disable=line-too-long

Theorem = Literal["T31", "T32", "T41", "T42"]


def _even(n: int) -> int:
    if n % 2:
        raise ValueError("n must be even")
    return n


# -------------------------
# Sessions
# -------------------------

class OpenSessionIn(BaseModel):
    """Per-session overrides of the server's base configuration."""
    model_config = ConfigDict(extra="forbid")
    p0_rule: Optional[str] = Field(default=None, min_length=1)
    precision_bits: Optional[int] = Field(default=None, ge=64)
    nodes: Optional[int] = Field(default=None, ge=16)
    aa38_alternate: Optional[bool] = None
    fixtures_dir: Optional[str] = Field(default=None, min_length=1)


class OpenSessionOut(BaseModel):
    model_config = ConfigDict(extra="forbid")
    session_id: str


class SessionIdIn(BaseModel):
    model_config = ConfigDict(extra="forbid")
    session_id: str = Field(..., min_length=5)


# -------------------------
# Engine requests
# -------------------------

class _SessionScoped(BaseModel):
    model_config = ConfigDict(extra="forbid")
    session_id: Optional[str] = Field(default=None, min_length=5)


class _Dimensioned(_SessionScoped):
    n: int = Field(..., ge=4)

    @field_validator("n")
    @classmethod
    def check_even(cls, n: int) -> int:
        return _even(n)


class CoefficientIn(_Dimensioned):
    name: str = Field(..., min_length=2)
    closed: bool = False


class VerifyCoefficientsIn(_SessionScoped):
    names: Optional[list[str]] = None
    ns: list[int] = Field(default_factory=lambda: [4], min_length=1)

    @field_validator("ns")
    @classmethod
    def check_ns(cls, ns: list[int]) -> list[int]:
        for n in ns:
            if n < 4 or n % 2:
                raise ValueError(f"every n must be an even integer >= 4, got {n}")
        return ns


class ExpressionIn(BaseModel):
    model_config = ConfigDict(extra="forbid")
    text: str = Field(..., min_length=1)


class ResidueIn(ExpressionIn):
    root: str = Field(default="i", min_length=1)


class BoundaryIn(_Dimensioned):
    theorem: Theorem
    variant: Literal["fixture", "derived", "both"] = "fixture"
    cases: bool = False


class InteriorIn(_Dimensioned):
    pass


class ReconcileIn(_Dimensioned):
    theorem: Theorem


class ListFixturesIn(_SessionScoped):
    pass


class FixtureIdIn(_SessionScoped):
    fixture_id: str = Field(..., min_length=1)


class FixtureChecksIn(_SessionScoped):
    n: int = Field(default=4, ge=4)

    @field_validator("n")
    @classmethod
    def check_even(cls, n: int) -> int:
        return _even(n)


# -------------------------
# Responses
# -------------------------

class ReportOut(BaseModel):
    """Same shape as a JSON report document."""
    model_config = ConfigDict(extra="forbid")
    version: str
    config: dict[str, Any]
    records: list[dict[str, Any]]
    findings: list[dict[str, Any]]
    ok: bool = True


class FixtureSummary(BaseModel):
    model_config = ConfigDict(extra="forbid")
    id: str
    anchor: str
    terms: int


class ListFixturesOut(BaseModel):
    model_config = ConfigDict(extra="forbid")
    fixtures: list[FixtureSummary]


class ShowFixtureOut(BaseModel):
    model_config = ConfigDict(extra="forbid")
    fixture_id: str
    text: str
