"""Aggregation and rendering of findings."""

from __future__ import annotations

import json
from dataclasses import dataclass
from itertools import groupby

from . import __version__
from .findings import CATEGORIES, SEVERITIES, Finding


@dataclass(frozen=True)
class Report:
    tool_version: str
    model_name: str
    seed: int
    budget: int
    checks_run: tuple[str, ...]
    findings: tuple[Finding, ...]

    @property
    def stats(self) -> dict:
        by_cat = {c: 0 for c in CATEGORIES}
        by_sev = {s: 0 for s in SEVERITIES}
        for f in self.findings:
            by_cat[f.category] += 1
            by_sev[f.severity] += 1
        return {"byCategory": by_cat, "bySeverity": by_sev}

    def to_dict(self) -> dict:
        return {
            "toolVersion": self.tool_version,
            "modelName": self.model_name,
            "seed": self.seed,
            "budget": self.budget,
            "checksRun": list(self.checks_run),
            "findings": [f.to_dict() for f in self.findings],
            "stats": self.stats,
        }


def sort_key(f: Finding):
    return (f.file, f.line, f.category, f.id)


def collect(findings, model_name: str = "", seed: int = 0, budget: int = 100,
            checks_run=()) -> Report:
    """Deduplicate by id and sort canonically.

    Among findings sharing an id, the least by (sort key, severity, question,
    evidence) is kept, so the result never depends on input order.
    """
    unique: dict[str, Finding] = {}
    for f in sorted(findings, key=lambda f: (*sort_key(f), f.severity, f.question, f.evidence)):
        unique.setdefault(f.id, f)
    ordered = tuple(sorted(unique.values(), key=sort_key))
    return Report(__version__, model_name, seed, budget, tuple(checks_run), ordered)


def strip_oracle(r: Report) -> Report:
    """The same report without oracle-derived findings."""
    return Report(r.tool_version, r.model_name, r.seed, r.budget, r.checks_run,
                  tuple(f for f in r.findings if not f.from_oracle))


def render(r: Report, fmt: str = "json") -> str:
    if fmt == "json":
        return json.dumps(r.to_dict(), indent=2, ensure_ascii=False) + "\n"
    if fmt == "text":
        return _render_text(r)
    raise ValueError(f"unknown format {fmt!r}")


def _render_text(r: Report) -> str:
    lines = [f"tacit-audit {r.tool_version}: model {r.model_name} "
             f"(seed {r.seed}, budget {r.budget})",
             f"checks: {', '.join(r.checks_run)}"]
    for file, group in groupby(r.findings, key=lambda f: f.file):
        lines.append("")
        lines.append(f"{file}")
        for f in group:
            lines.append(f"  {f.line:>4}  {f.severity.upper():<9} {f.category} [{f.id}]")
            lines.append(f"        {f.question}")
            lines.append(f"        subjects: {', '.join(f.subjects)}")
            lines.append(f"        evidence: {f.evidence}")
    sev = r.stats["bySeverity"]
    lines.append("")
    lines.append(f"{len(r.findings)} finding(s): "
                 + ", ".join(f"{sev[s]} {s}" for s in reversed(SEVERITIES)))
    return "\n".join(lines) + "\n"
