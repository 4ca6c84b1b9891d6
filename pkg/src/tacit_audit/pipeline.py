"""Runs the selected analyses over one validated model in a fixed order."""

from __future__ import annotations

import logging
from dataclasses import dataclass, field

from . import lint, questions, reachability
from .lexicon import Dictionary
from .lint import LintConfig
from .ontology import Checklist, diff_checklist, gap_findings
from .reachability import ExploreLimits, LimitExceeded, ProductTooLarge
from .report import Report, collect
from .sampling import Budget
from .validate import symbol_table

log = logging.getLogger(__name__)

# fixed execution order; "validate" always runs and "explore" runs on demand
CHECKS = (
    "unreachable_composites",
    "completeness_anomalies",
    "encapsulation",
    "disjointness",
    "containment",
    "atomicity",
    "entity_relations",
    "self_falsifying",
    "order_unspecified",
    "fragmented",
    "silent_conditions",
    "fixed_parameters",
    "similar_names",
    "checklist",
)
IMPLICIT = ("validate", "explore")


@dataclass
class Options:
    checks: frozenset[str] = frozenset(CHECKS)
    budget: Budget = field(default_factory=Budget)
    limits: ExploreLimits = field(default_factory=ExploreLimits)
    lint: LintConfig = field(default_factory=LintConfig)
    dictionary: Dictionary = field(default_factory=Dictionary)
    checklist: Checklist | None = None
    oracle: object = None


@dataclass
class Outcome:
    report: Report
    partial: bool = False
    notes: list[str] = field(default_factory=list)
    gap: object = None


def audit(m, opts: Options = Options()) -> Outcome:
    """Run every selected check over a validated model."""
    selected = [c for c in CHECKS if c in opts.checks]
    if opts.checklist is None and "checklist" in selected:
        selected.remove("checklist")
    ran = ["validate"]
    findings = []
    partial = False
    notes: list[str] = []
    b = opts.budget

    reach = None
    if {"unreachable_composites", "completeness_anomalies"} & set(selected):
        ran.append("explore")
        try:
            reach = reachability.explore(m, opts.limits)
        except LimitExceeded as exc:
            reach, partial = exc.partial, True
            notes.append(f"exploration stopped early: {exc.reason}")
        except ProductTooLarge as exc:
            partial = True
            notes.append(f"exploration skipped: {exc}")
            selected = [c for c in selected
                        if c not in ("unreachable_composites", "completeness_anomalies")]

    gap = None
    for check in selected:
        if check == "unreachable_composites":
            findings += reachability.unreachable_composites(m, reach)
        elif check == "completeness_anomalies":
            findings += reachability.completeness_anomalies(m, reach)
        elif check == "encapsulation":
            findings += questions.gen_encapsulation(m, b)
        elif check == "disjointness":
            findings += questions.gen_disjointness(m, b)
        elif check == "containment":
            findings += questions.gen_containment(m)
        elif check == "atomicity":
            findings += questions.gen_atomicity(m)
        elif check == "entity_relations":
            findings += questions.gen_entity_relations(m, b)
        elif check == "self_falsifying":
            findings += lint.lint_self_falsifying(m)
        elif check == "order_unspecified":
            findings += lint.lint_order_unspecified(m)
        elif check == "fragmented":
            findings += lint.lint_fragmented(m)
        elif check == "silent_conditions":
            findings += lint.lint_silent_conditions(m)
        elif check == "fixed_parameters":
            findings += lint.lint_fixed_parameters(m, opts.lint)
        elif check == "similar_names":
            findings += lint.lint_similar_names(symbol_table(m), opts.lint, opts.dictionary)
        elif check == "checklist":
            gap = diff_checklist(opts.checklist, m, opts.dictionary, opts.oracle)
            findings += gap_findings(gap, opts.checklist, m)
        ran.append(check)
    report = collect(findings, m.name, b.seed, b.max_questions_per_check, ran)
    return Outcome(report, partial, notes, gap)
