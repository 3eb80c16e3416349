"""Report documents and their plain, JSON and LaTeX renderings."""

from __future__ import annotations

import json
from typing import Any, Iterable, Literal

from pydantic import BaseModel, ConfigDict, Field

from wres_verifier import __version__

ReportFormat = Literal["plain", "json", "latex"]
FORMATS = ("plain", "json", "latex")


class Finding(BaseModel):
    """A disagreement with printed material; never an error."""
    model_config = ConfigDict(extra="forbid")
    kind: str
    subject: str
    anchor: str
    message: str
    conditional: bool = False


class ReportDocument(BaseModel):
    model_config = ConfigDict(extra="forbid")
    version: str = __version__
    config: dict[str, Any] = Field(default_factory=dict)
    records: list[dict[str, Any]] = Field(default_factory=list)
    findings: list[Finding] = Field(default_factory=list)

    def add_findings(self, findings: Iterable[dict[str, Any]]) -> None:
        self.findings.extend(Finding.model_validate(f) for f in findings)


def emit_report(doc: ReportDocument, fmt: str = "plain") -> str:
    """Serializes a report; output is byte-identical for equal documents."""
    if fmt == "json":
        return json.dumps(doc.model_dump(mode="json"), sort_keys=True, indent=2) + "\n"
    if fmt == "latex":
        return _latex(doc)
    if fmt == "plain":
        return _plain(doc)
    raise ValueError(f"format must be one of {FORMATS}, got {fmt!r}")


# --------------------------------------------------
# plain
# --------------------------------------------------

def _table(headers: list[str], rows: list[list[str]]) -> list[str]:
    widths = [max(len(h), *(len(r[k]) for r in rows)) if rows else len(h) for k, h in enumerate(headers)]
    fmt = "  ".join(f"{{:<{w}}}" for w in widths)
    lines = [fmt.format(*headers).rstrip(), fmt.format(*("-" * w for w in widths))]
    lines.extend(fmt.format(*row).rstrip() for row in rows)
    return lines


def _yes(value: Any) -> str:
    if value is None:
        return "-"
    return "yes" if value else "NO"


def _plain(doc: ReportDocument) -> str:
    lines = [f"wres-verifier {doc.version}"]
    for key in sorted(doc.config):
        lines.append(f"  {key}: {doc.config[key]}")
    coefficients = [r for r in doc.records if r.get("kind") == "coefficient"]
    if coefficients:
        lines.append("")
        lines.extend(_table(
            ["name", "n", "defining", "closed", "closed=defining", "numeric ok"],
            [[r["name"], str(r["n"]), r["defining"], r["closed"], _yes(r["closed_matches_defining"]), _yes(r["defining_vs_numeric_ok"])]
             for r in coefficients],
        ))
    checks = [r for r in doc.records if r.get("kind") == "fixture-check"]
    if checks:
        lines.append("")
        lines.extend(_table(["check", "n", "status"], [[r["check"], str(r["n"]), r["status"]] for r in checks]))
    for record in doc.records:
        kind = record.get("kind")
        if kind == "reconcile":
            lines.append("")
            flag = "  (conditional on the p0 rule)" if record["conditional_on_p0_rule"] else ""
            lines.append(f"{record['theorem']} n={record['n']}{flag}")
            columns = record["columns"]
            lines.extend(_table(
                ["atoms", *columns, "disagree"],
                [[e["display"], *(e[c] for c in columns), ",".join(e["disagree"]) or "-"] for e in record["entries"]],
            ))
            for case in record["cases"]:
                lines.append(f"  case {case['case']}: {'agree' if case['agree'] else 'DIFFER'}")
        elif kind not in ("coefficient", "fixture-check"):
            lines.append(f"{record.get('subject', kind)}: {record.get('value', '')}")
    if doc.findings:
        lines.append("")
        lines.append("findings:")
        for f in doc.findings:
            suffix = " [conditional]" if f.conditional else ""
            lines.append(f"  - [{f.kind}] {f.subject} ({f.anchor}): {f.message}{suffix}")
    return "\n".join(lines) + "\n"


# --------------------------------------------------
# LaTeX
# --------------------------------------------------

_LATEX_ESCAPES = {
    "\\": r"\textbackslash{}", "&": r"\&", "%": r"\%", "$": r"\$", "#": r"\#",
    "_": r"\_", "{": r"\{", "}": r"\}", "~": r"\textasciitilde{}", "^": r"\^{}",
}


def latex_escape(text: str) -> str:
    return "".join(_LATEX_ESCAPES.get(c, c) for c in str(text))


def _tabular(spec: str, headers: list[str], rows: list[list[str]]) -> list[str]:
    lines = [f"\\begin{{tabular}}{{{spec}}}", "\\toprule", " & ".join(headers) + " \\\\", "\\midrule"]
    lines.extend(" & ".join(row) + " \\\\" for row in rows)
    lines.extend(["\\bottomrule", "\\end{tabular}"])
    return lines


def _tt(text: Any) -> str:
    return f"\\texttt{{{latex_escape(text)}}}"


def _latex(doc: ReportDocument) -> str:
    lines = [f"% wres-verifier {doc.version}"]
    for key in sorted(doc.config):
        lines.append(f"% {key}: {doc.config[key]}")
    coefficients = [r for r in doc.records if r.get("kind") == "coefficient"]
    if coefficients:
        lines.extend(_tabular(
            "lrllc",
            ["name", "$n$", "defining", "closed", "match"],
            [[latex_escape(r["name"]), str(r["n"]), _tt(r["defining"]), _tt(r["closed"]),
              "\\checkmark" if r["closed_matches_defining"] else "$\\times$"] for r in coefficients],
        ))
    checks = [r for r in doc.records if r.get("kind") == "fixture-check"]
    if checks:
        lines.extend(_tabular("lrl", ["check", "$n$", "status"], [[_tt(r["check"]), str(r["n"]), r["status"]] for r in checks]))
    for record in doc.records:
        if record.get("kind") == "reconcile":
            columns = record["columns"]
            lines.append(f"% {record['theorem']} n={record['n']}")
            lines.extend(_tabular(
                "l" * (len(columns) + 1),
                ["atoms", *(latex_escape(c) for c in columns)],
                [[_tt(e["display"]), *(_tt(e[c]) for c in columns)] for e in record["entries"]],
            ))
    others = [r for r in doc.records if r.get("kind") not in ("coefficient", "reconcile", "fixture-check")]
    if others:
        lines.extend(_tabular("ll", ["subject", "value"], [[latex_escape(r.get("subject", "")), _tt(r.get("value", ""))] for r in others]))
    if doc.findings:
        lines.append("\\begin{itemize}")
        for f in doc.findings:
            lines.append(f"\\item \\textbf{{{latex_escape(f.subject)}}} ({latex_escape(f.anchor)}): {latex_escape(f.message)}")
        lines.append("\\end{itemize}")
    return "\n".join(lines) + "\n"
