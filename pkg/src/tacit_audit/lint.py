"""Language and code lints over rules, guards, constants and identifiers."""

from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass

from . import kernels
from .findings import Finding, make_finding
from .lexicon import Dictionary, expand_identifier
from .model import Assign, Compare, Lit, Model, Name, expr_literals, render_expr, render_value
from .sampling import all_pairs
from .validate import Identifier, variable_names


@dataclass(frozen=True)
class LintConfig:
    similar_name_max_distance: float = 0.2
    min_constant_occurrences: int = 2

    def __post_init__(self):
        if not 0.0 <= self.similar_name_max_distance <= 1.0:
            raise ValueError("similar_name_max_distance must lie in [0, 1]")
        if self.min_constant_occurrences < 2:
            raise ValueError("min_constant_occurrences must be >= 2")


def lint_self_falsifying(m: Model) -> list[Finding]:
    """Rules whose actions assign a variable their own condition reads."""
    out = []
    for r in m.rules:
        if r.trigger is None and r.condition is None:
            continue
        cond_vars = variable_names(r.trigger, m) | variable_names(r.condition, m)
        hit = sorted({a.variable for a in r.actions if isinstance(a, Assign)} & cond_vars)
        if not hit:
            continue
        cond = " and ".join(render_expr(e) for e in (r.trigger, r.condition) if e is not None)
        out.append(make_finding(
            "LANG_UNINTENDED", "question", (r.name, *hit),
            f"Rule {r.name} fires while '{cond}' holds and its actions assign "
            f"{', '.join(hit)}, which that condition reads. Is the action meant to happen "
            "exactly once per episode of the condition? Depending on timing it could run "
            "more than once. (Syntactic check: the assignment may not actually falsify it.)",
            f"assigned condition variable(s): {', '.join(hit)}",
            m.filename, r.line))
    return out


def _same_event_pairs(m: Model):
    by_event = defaultdict(list)
    for r in m.rules:
        if r.event is not None:
            by_event[r.event].append(r)
    for event in sorted(by_event):
        rules = by_event[event]
        for i, j in all_pairs(len(rules)):
            yield event, rules[i], rules[j]


def lint_order_unspecified(m: Model) -> list[Finding]:
    """Unprioritized rule pairs reacting to the same event."""
    out = []
    for event, a, b in _same_event_pairs(m):
        if a.priority is not None or b.priority is not None:
            continue
        out.append(make_finding(
            "LANG_UNSPECIFIED", "question", (a.name, b.name),
            f"Rules {a.name} and {b.name} both react to event {event} and neither has a "
            "priority. Should one run before the other, or concurrently, and does the "
            "order matter?",
            f"both triggered by event {event}",
            m.filename, a.line))
    return out


def lint_fragmented(m: Model) -> list[Finding]:
    """Same-trigger rule pairs with different priorities: a base rule and its override."""
    groups = defaultdict(list)
    for r in m.rules:
        key = ("event", r.event) if r.event is not None else ("cond", render_expr(r.trigger))
        groups[key].append(r)
    out = []
    for key in sorted(groups):
        rules = groups[key]
        trigger = f"event {key[1]}" if key[0] == "event" else f"condition '{key[1]}'"
        for i, j in all_pairs(len(rules)):
            a, b = rules[i], rules[j]
            if a.priority == b.priority:
                continue
            out.append(make_finding(
                "LANG_FRAGMENTED", "question", (a.name, b.name),
                f"Rules {a.name} and {b.name} share the trigger {trigger} but have different "
                "priorities, so one requirement is split into a base rule and an override. "
                "Where is the consolidated requirement documented?",
                f"priorities {_prio(a.priority)} and {_prio(b.priority)}",
                m.filename, a.line))
    return out


def _prio(p: int | None) -> str:
    return "none" if p is None else str(p)


def lint_silent_conditions(m: Model) -> list[Finding]:
    """Sibling transitions that test a variable the others silently ignore."""
    by_source = defaultdict(list)
    for t in m.transitions:
        by_source[t.source].append(t)
    out = []
    for source, ts in by_source.items():
        if len(ts) < 2:
            continue
        guard_vars = [variable_names(t.guard, m) for t in ts]
        tested = set().union(*guard_vars)
        for t, mine in zip(ts, guard_vars):
            for v in sorted(tested - mine):
                others = [o.line for o, vs in zip(ts, guard_vars) if v in vs]
                out.append(make_finding(
                    "CODE_SILENT_CONDITION", "question", (source, v, t.target),
                    f"Transition {t.describe()} does not test {v}, although a sibling "
                    f"transition out of {source} does. Is {v} assumed to hold, "
                    "assumed not to hold, or not to matter here, or is the missing check an omission?",
                    f"{v} tested by sibling(s) on line(s) {', '.join(map(str, others))}",
                    m.filename, t.line))
    return out


def lint_fixed_parameters(m: Model, cfg: LintConfig = LintConfig()) -> list[Finding]:
    """Non-boolean constants repeated across guards, conditions and assignments."""
    declared = {v.name for v in m.variables}
    sites = []  # (line, what, expr-or-action)
    for t in m.transitions:
        if t.guard is not None:
            sites.append((t.line, "guard", t.guard))
        sites += _assignments(t.actions)
    for s in m.iter_states():
        sites += _assignments(s.entry + s.exit)
    for r in m.rules:
        for e, what in ((r.trigger, "condition"), (r.condition, "condition")):
            if e is not None:
                sites.append((r.line, what, e))
        sites += _assignments(r.actions)
    uses = defaultdict(list)  # literal text -> [(line, what, variables)]
    for line, what, node in sites:
        found: dict[str, set[str]] = defaultdict(set)
        if isinstance(node, Assign):
            if isinstance(node.value, int) and not isinstance(node.value, bool) or node.is_name:
                found[render_value(node.value)].add(node.variable)
        else:
            for cmp in _compares(node):
                vars_ = {s.id for s in (cmp.left, cmp.right) if isinstance(s, Name) and s.id in declared}
                for leaf in expr_literals(cmp):
                    if isinstance(leaf, Lit) and not isinstance(leaf.value, bool):
                        found[render_value(leaf.value)] |= vars_
                    elif isinstance(leaf, Name) and leaf.id not in declared:
                        found[leaf.id] |= vars_
        for text, vars_ in found.items():
            uses[text].append((line, what, vars_))
    out = []
    for text in sorted(uses):
        occ = uses[text]
        if len(occ) < cfg.min_constant_occurrences:
            continue
        vars_ = sorted(set().union(*(v for _, _, v in occ)))
        where = ", ".join(f"line {line} ({what})" for line, what, _ in occ)
        out.append(make_finding(
            "CODE_FIXED_PARAMETER", "question", (text, *vars_),
            f"The constant {text} appears in {len(occ)} places. Setting aside whether "
            f"{text} is the right number, should every place that uses it really share one fixed value?",
            f"occurs at {where}",
            m.filename, occ[0][0]))
    return out


def _assignments(actions):
    return [(a.pos.line, "assignment", a) for a in actions if isinstance(a, Assign)]


def _compares(e):
    if isinstance(e, Compare):
        yield e
    elif isinstance(e, (Name, Lit)):
        return
    elif hasattr(e, "operand"):
        yield from _compares(e.operand)
    else:
        yield from _compares(e.left)
        yield from _compares(e.right)


def lint_similar_names(table: list[Identifier], cfg: LintConfig = LintConfig(),
                       d: Dictionary = Dictionary()) -> list[Finding]:
    """Distinct identifiers that are nearly equal, or expand to the same phrase."""
    first: dict[str, Identifier] = {}
    for ident in table:
        first.setdefault(ident.text, ident)
    names = sorted(first)
    near = set(kernels.similar_pairs([n.lower() for n in names], cfg.similar_name_max_distance))
    phrases = [expand_identifier(n, d).phrase for n in names]
    by_phrase = defaultdict(list)
    for i, p in enumerate(phrases):
        if p:
            by_phrase[p].append(i)
    same = {(idx[a], idx[b]) for idx in by_phrase.values() for a, b in all_pairs(len(idx))}
    out = []
    for i, j in sorted(near | same):
        a, b = names[i], names[j]
        reasons = []
        if (i, j) in near:
            dist = kernels.levenshtein(a.lower(), b.lower())
            reasons.append(f"edit distance {dist}/{max(len(a), len(b))}")
        if (i, j) in same:
            reasons.append(f"both expand to '{phrases[i]}'")
        ia, ib = first[a], first[b]
        out.append(make_finding(
            "LANG_UNCLEAR", "question", (a, b),
            f"The {ia.kind} {a} and the {ib.kind} {b} have confusingly similar names. "
            "Do they denote different entities, and will every reader tell them apart?",
            "; ".join(reasons),
            ia.file, ia.line))
    return out

