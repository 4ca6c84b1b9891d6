"""Structure-driven challenge questions.

Each generator walks one structural feature of the model and emits fixed
template questions. Generators that enumerate pairs respect the per-check
budget: candidates are listed in canonical order and, when they do not fit,
a deterministic sample is drawn (see :mod:`tacit_audit.sampling`). A check
with several candidate kinds spends its budget on them in order.
"""

from __future__ import annotations

from collections import defaultdict

from .findings import Finding, make_finding
from .hierarchy import Chart
from .model import Assign, Model
from .sampling import Budget, all_pairs, sample, sample_pairs
from .validate import variable_names


def _assigned(actions) -> list[str]:
    return [a.variable for a in actions if isinstance(a, Assign)]


def gen_encapsulation(m: Model, b: Budget = Budget()) -> list[Finding]:
    """Cross-region variable coupling, and budgeted member-pair abstraction questions."""
    chart = Chart(m)
    out: list[Finding] = []
    for p in chart.parallel_states:
        writes: dict[str, dict[str, list[int]]] = {}
        reads: dict[str, dict[str, list[int]]] = {}
        for region in p.children:
            w: dict[str, list[int]] = defaultdict(list)
            r: dict[str, list[int]] = defaultdict(list)
            for t in m.transitions:
                if not chart.states[t.source].is_descendant_of(region):
                    continue
                for var in _assigned(t.actions):
                    w[var].append(t.line)
                for var in variable_names(t.guard, m):
                    r[var].append(t.line)
            for s in chart.descendants(region):
                for a in s.state.entry + s.state.exit:
                    if isinstance(a, Assign):
                        w[a.variable].append(a.pos.line)
            writes[region.name], reads[region.name] = w, r
        for writer in p.children:
            for reader in p.children:
                if writer is reader:
                    continue
                shared = sorted(set(writes[writer.name]) & set(reads[reader.name]))
                for var in shared:
                    wl = sorted(set(writes[writer.name][var]))
                    rl = sorted(set(reads[reader.name][var]))
                    out.append(make_finding(
                        "SPEC_ABSTRACTION", "question", (var, writer.name, reader.name),
                        f"Region {reader.name} depends on variable {var}, which region "
                        f"{writer.name} changes. Orthogonal regions of {p.name} look "
                        "independent; is this coupling across the encapsulation boundary "
                        "documented, and does it hold for every timing of the two regions?",
                        f"written on line(s) {_lines(wl)}; read on line(s) {_lines(rl)}",
                        m.filename, rl[0]))
    candidates = [(es, es.members[i], es.members[j])
                  for es in m.sets for i, j in all_pairs(len(es.members))]
    for es, x, y in sample(candidates, b.max_questions_per_check, b.seed):
        out.append(make_finding(
            "SPEC_ABSTRACTION", "question", (es.name, x, y),
            f"{x} and {y} are both members of {es.name} and are treated by one abstraction. "
            f"Do the differences between {x} and {y} call for differentiated treatment, "
            f"or is it safe to assume every member of {es.name} behaves alike?",
            f"set {es.name} has {len(es.members)} members",
            m.filename, es.pos.line))
    return out


def gen_disjointness(m: Model, b: Budget = Budget()) -> list[Finding]:
    """Disjointness violations, plus budgeted overlap questions on sets and sibling states."""
    out: list[Finding] = []
    sets = list(m.sets)
    undeclared = []
    for i, j in all_pairs(len(sets)):
        a, c = sets[i], sets[j]
        if c.name in a.disjoint_with or a.name in c.disjoint_with:
            shared = sorted(set(a.members) & set(c.members))
            if shared:
                out.append(make_finding(
                    "SPEC_ORTHOGONALITY", "violation", (a.name, c.name, *shared),
                    f"Sets {a.name} and {c.name} are declared disjoint but both contain "
                    f"{', '.join(shared)}. Which classification is right, and what other "
                    "entities could legitimately belong to both?",
                    f"shared member(s): {', '.join(shared)}",
                    m.filename, a.pos.line))
        else:
            undeclared.append((a, c))
    budget = b.max_questions_per_check
    picked = sample(undeclared, budget, b.seed)
    for a, c in picked:
        out.append(make_finding(
            "SPEC_ORTHOGONALITY", "question", (a.name, c.name),
            f"Sets {a.name} and {c.name} are not declared disjoint. Could an entity in "
            f"{a.name} also belong to {c.name}, and is that case handled?",
            "no disjointness declaration between the two sets",
            m.filename, a.pos.line))
    chart = Chart(m)
    siblings = []
    for container in chart.or_containers():
        kids = container.children
        siblings += [(container, kids[i], kids[j]) for i, j in all_pairs(len(kids))]
    for container, x, y in sample(siblings, budget - len(picked), b.seed):
        where = "the top level" if container.kind == "root" else f"{container.kind} {container.name}"
        out.append(make_finding(
            "SPEC_ORTHOGONALITY", "question", (x.name, y.name),
            f"States {x.name} and {y.name} are exclusive alternatives in {where}. Could the "
            "system face a situation that satisfies the real-world conditions of both "
            "at the same time?",
            f"sibling states in {where}",
            m.filename, x.state.line))
    return out


def gen_containment(m: Model) -> list[Finding]:
    """One question per (transition leaving a composite state, nested basic state)."""
    chart = Chart(m)
    out: list[Finding] = []
    for t in m.transitions:
        src = chart.states[t.source]
        if src.kind == "basic":
            continue
        trigger = f"on {t.event}" if t.event else "when its guard holds"
        for d in chart.descendants(src, basic_only=True):
            asymmetric = bool(d.state.entry) and not d.state.exit
            out.append(make_finding(
                "SPEC_CONTAINMENT", "warning" if asymmetric else "question",
                (src.name, d.name) + ((t.event,) if t.event else ()),
                f"Transition {t.describe()} exits {src.name} {trigger} from any nested "
                f"state. Can the system really leave while in {d.name}, and does "
                "leaving it need cleanup that the model does not specify?",
                (f"{d.name} has entry actions but no exit actions"
                 if asymmetric else f"{d.name} is nested in {src.name}"),
                m.filename, t.line))
    return out


def atomicity_changes(m: Model, t) -> tuple[bool, list[str]]:
    """(control location changes, distinct assigned variables) for a transition."""
    return t.source != t.target, sorted(set(_assigned(t.actions)))


def gen_atomicity(m: Model) -> list[Finding]:
    """Flag transitions that change two or more state variables at once."""
    out: list[Finding] = []
    for t in m.transitions:
        control, assigned = atomicity_changes(m, t)
        if not ((control and assigned) or len(assigned) >= 2):
            continue
        changed = ([f"control ({t.source} to {t.target})"] if control else []) + assigned
        out.append(make_finding(
            "SPEC_ATOMICITY", "question", (t.source, t.target, *assigned),
            f"Transition {t.describe()} changes {len(changed)} state variables at once: "
            f"{', '.join(changed)}. Could the system be observed after only some of them "
            "have changed, and does that partial update need handling?",
            f"{len(changed)} state variables change",
            m.filename, t.line))
    return out


def gen_entity_relations(m: Model, b: Budget = Budget()) -> list[Finding]:
    """Budgeted questions about unstated relationships between sets, then between members."""
    out: list[Finding] = []
    sets = list(m.sets)
    pairs = sample_pairs(len(sets), b.max_questions_per_check, b.seed)
    for i, j in pairs:
        a, c = sets[i], sets[j]
        out.append(make_finding(
            "SPEC_COMPLETENESS", "question", (a.name, c.name),
            f"Is there a relationship between {a.name} and {c.name} that the model does "
            "not state, for example one constraining, containing or reacting to the other?",
            "no relation between the sets is modeled",
            m.filename, a.pos.line))
    members = [(a, x, c, y)
               for i, j in all_pairs(len(sets))
               for a, c in [(sets[i], sets[j])]
               for x in a.members for y in c.members if x != y]
    for a, x, c, y in sample(members, b.max_questions_per_check - len(pairs), b.seed):
        out.append(make_finding(
            "SPEC_COMPLETENESS", "question", (a.name, x, c.name, y),
            f"Is there an unstated relationship between {x} (in {a.name}) and {y} "
            f"(in {c.name})?",
            "no relation between the members is modeled",
            m.filename, a.pos.line))
    return out


def _lines(lines: list[int]) -> str:
    return ", ".join(str(n) for n in lines)
