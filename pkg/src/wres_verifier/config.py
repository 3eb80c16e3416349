"""Engine configuration: defaults, ``wres.toml``, environment, command line."""

from __future__ import annotations

import logging
import os
import sys
from pathlib import Path
from typing import Any, Literal, Mapping, Optional

from pydantic import BaseModel, ConfigDict, Field

from wres_verifier.arith import MIN_PRECISION_BITS
from wres_verifier.ratfunc import MIN_NODES

if sys.version_info >= (3, 11):
    import tomllib
else:  # pragma: no cover
    import tomli as tomllib

DEFAULT_CONFIG_FILE = "wres.toml"
DEFAULT_P0_RULE = "coeff=-(n-1)/4 atoms=HP:1 cliff=CDXN"
DEFAULT_P0_PROVENANCE = (
    "sigma_0(D)(x0) = -((n-1)/4) h'(0) c(dx_n), taken from the standard boundary "
    "normal form of the Dirac operator; not derived here"
)

ENV_KEYS = {
    "WRES_P0_RULE": "p0_rule",
    "WRES_PRECISION_BITS": "precision_bits",
    "WRES_NODES": "nodes",
    "WRES_FIXTURES": "fixtures_dir",
    "WRES_LOG_LEVEL": "log_level",
}

LogLevel = Literal["DEBUG", "INFO", "WARNING", "ERROR"]


class EngineConfig(BaseModel):
    """Run-wide knobs; every report prints the p0 rule with its provenance."""
    model_config = ConfigDict(extra="forbid")
    p0_rule: str = Field(default=DEFAULT_P0_RULE, min_length=1)
    p0_provenance: str = DEFAULT_P0_PROVENANCE
    pi_plus: Literal["principal-part"] = "principal-part"
    precision_bits: int = Field(default=256, ge=MIN_PRECISION_BITS)
    nodes: int = Field(default=4096, ge=MIN_NODES)
    aa38_alternate: bool = True
    fixtures_dir: Optional[Path] = None
    log_level: LogLevel = "WARNING"

    def report_config(self) -> dict[str, Any]:
        return {
            "p0_rule": self.p0_rule,
            "p0_provenance": self.p0_provenance,
            "pi_plus": self.pi_plus,
            "precision_bits": self.precision_bits,
            "nodes": self.nodes,
        }


def _read_toml(path: Optional[Path]) -> dict[str, Any]:
    if path is None:
        candidate = Path(DEFAULT_CONFIG_FILE)
        if not candidate.is_file():
            return {}
        path = candidate
    with open(path, "rb") as fh:
        raw = tomllib.load(fh)
    return dict(raw.get("wres", {}))


def load_config(
    path: Optional[Path] = None,
    env: Optional[Mapping[str, str]] = None,
    overrides: Optional[Mapping[str, Any]] = None,
) -> EngineConfig:
    """Merges defaults, TOML, environment and explicit overrides, later wins.

    Raises:
        pydantic.ValidationError: If a merged value is out of range.
        FileNotFoundError: If an explicit ``path`` does not exist.
    """
    values = _read_toml(Path(path) if path else None)
    env = os.environ if env is None else env
    for key, field_name in ENV_KEYS.items():
        if env.get(key):
            values[field_name] = env[key]
    for key, value in (overrides or {}).items():
        if value is not None:
            values[key] = value
    return EngineConfig.model_validate(values)


def configure_logging(level: str = "WARNING") -> None:
    """Installs one stderr handler on the package logger; entry points only."""
    root = logging.getLogger("wres_verifier")
    root.setLevel(level)
    if not any(getattr(h, "_wres", False) for h in root.handlers):
        handler = logging.StreamHandler(sys.stderr)
        handler.setFormatter(logging.Formatter("%(levelname)s %(name)s: %(message)s"))
        handler._wres = True  # type: ignore[attr-defined]
        root.addHandler(handler)
