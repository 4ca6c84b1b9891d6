"""Explicit-state exploration of the statechart and the findings derived from it.

Step semantics (one macro-step per event):

* the environment may offer any alphabet event, or a silent tick, whenever the
  internal event queue is empty; queued events are consumed first;
* a transition is enabled when its source is active, its event matches (an
  eventless transition matches every step) and its guard holds;
* enabled transitions are taken innermost source first, then in document
  order, skipping any whose exit set overlaps one already taken, so every
  region with an enabled transition fires in the same step;
* rules whose trigger matches fire in the same step;
* guards read the pre-step valuation; all assignments (exit, transition,
  entry and rule actions) then apply in document order, and emitted events are
  appended to the queue.
"""

from __future__ import annotations

import itertools
import operator
from collections import deque
from dataclasses import dataclass
from math import prod
from typing import Callable

from .findings import Finding, make_finding
from .hierarchy import Chart, Node
from .model import (
    Assign, BoolOp, Emit, Expr, Lit, Model, Name, Not, Value, render_value,
)


@dataclass(frozen=True)
class ExploreLimits:
    max_configurations: int = 1_000_000
    max_steps: int = 10_000_000
    max_queue: int = 16

    def __post_init__(self):
        if min(self.max_configurations, self.max_steps, self.max_queue) <= 0:
            raise ValueError("exploration limits must be positive")


@dataclass(frozen=True, order=True)
class Configuration:
    controls: tuple[tuple[str, str], ...]  # (region path, active basic state)
    valuation: tuple[tuple[str, Value], ...]

    @property
    def active_basic(self) -> frozenset[str]:
        return frozenset(name for _, name in self.controls)

    def value(self, variable: str) -> Value:
        return dict(self.valuation)[variable]


@dataclass(frozen=True)
class ReachSet:
    configurations: frozenset[Configuration]
    fired_transitions: frozenset[int]
    exhausted: bool
    fired_rules: frozenset[str] = frozenset()
    initial: Configuration | None = None

    def sorted_configurations(self) -> list[Configuration]:
        return sorted(self.configurations, key=_config_key)


def _config_key(c: Configuration):
    return (c.controls, tuple((n, repr(v)) for n, v in c.valuation))


class LimitExceeded(Exception):
    """Exploration stopped early; ``partial`` holds what was found so far."""

    def __init__(self, reason: str, partial: ReachSet):
        self.reason = reason
        self.partial = partial
        super().__init__(reason)


class ProductTooLarge(Exception):
    def __init__(self, bound: int, limit: int):
        self.bound = bound
        self.limit = limit
        super().__init__(f"state space bound {bound} exceeds limit {limit}")


def static_bound(m: Model) -> int:
    """Upper bound on configurations: control product times variable domains."""
    def count(n: Node) -> int:
        if n.kind == "basic":
            return 1
        if n.kind == "parallel":
            return prod(count(r) for r in n.children)
        return max(1, sum(count(c) for c in n.children))
    return count(Chart(m).root) * prod(len(v.domain.values()) for v in m.variables)


_CMP = {"==": operator.eq, "!=": operator.ne, "<": operator.lt, "<=": operator.le,
        ">": operator.gt, ">=": operator.ge}


def compile_expr(e: Expr, slots: dict[str, int]) -> Callable[[tuple], bool]:
    """Closure evaluating ``e`` against a valuation tuple indexed by ``slots``."""
    if isinstance(e, Name):
        if e.id in slots:
            k = slots[e.id]
            return lambda vals: vals[k]
        lit = e.id
        return lambda vals: lit
    if isinstance(e, Lit):
        value = e.value
        return lambda vals: value
    if isinstance(e, Not):
        inner = compile_expr(e.operand, slots)
        return lambda vals: not inner(vals)
    left = compile_expr(e.left, slots)
    right = compile_expr(e.right, slots)
    if isinstance(e, BoolOp):
        if e.op == "&&":
            return lambda vals: bool(left(vals)) and bool(right(vals))
        return lambda vals: bool(left(vals)) or bool(right(vals))
    op = _CMP[e.op]
    return lambda vals: op(left(vals), right(vals))


class _CompiledTransition:
    __slots__ = ("t", "index", "source", "depth", "exit_root", "entered", "entered_leaves",
                 "guard", "event")


class Stepper:
    """Precomputed step function over (leaves, valuation, queue) triples."""

    def __init__(self, m: Model, limits: ExploreLimits = ExploreLimits()):
        self.model = m
        self.limits = limits
        self.chart = chart = Chart(m)
        self.slots = {v.name: i for i, v in enumerate(m.variables)}
        self.var_names = [v.name for v in m.variables]
        self.alphabet = m.events
        self.leaf_ancestors: dict[Node, list[Node]] = {
            leaf: [leaf] + [a for a in leaf.ancestors() if a.is_state] for leaf in chart.basic_states
        }
        self.compiled = [self._compile_transition(t) for t in m.transitions]
        prio = sorted(self.compiled, key=lambda c: (-c.depth, c.index))
        self.by_event = {ev: [c for c in prio if c.event is None or c.event == ev]
                         for ev in (None, *self.alphabet)}
        self.rules = [
            (r, r.event,
             compile_expr(r.trigger, self.slots) if r.trigger is not None else None,
             compile_expr(r.condition, self.slots) if r.condition is not None else None)
            for r in m.rules
        ]

    def _compile_transition(self, t) -> _CompiledTransition:
        chart = self.chart
        src = chart.states[t.source]
        tgt = chart.states[t.target]
        lca = next(a for a in src.ancestors() if a.is_or and tgt.is_descendant_of(a) and a is not tgt)
        exit_root = src if src.parent is lca else next(a for a in src.ancestors() if a.parent is lca)
        entry_root = tgt if tgt.parent is lca else next(a for a in tgt.ancestors() if a.parent is lca)
        on_path = {tgt, *itertools.takewhile(lambda a: a is not lca, tgt.ancestors())}
        entered: list[Node] = []

        def enter(n: Node) -> None:
            if n.is_state:
                entered.append(n)
            if n.kind == "parallel":
                for r in n.children:
                    enter(r)
            elif n.kind in ("region", "compound"):
                nxt = next((c for c in n.children if c in on_path), n.initial)
                if nxt is not None:
                    enter(nxt)

        enter(entry_root)
        c = _CompiledTransition()
        c.t = t
        c.index = t.index
        c.source = src
        c.depth = src.depth
        c.exit_root = exit_root
        c.entered = entered
        c.entered_leaves = frozenset(n for n in entered if n.kind == "basic")
        c.guard = compile_expr(t.guard, self.slots) if t.guard is not None else None
        c.event = t.event
        return c

    def initial(self) -> tuple:
        leaves = tuple(sorted((n for n in self.chart.default_entry(self.chart.root)
                               if n.kind == "basic"), key=lambda n: n.order))
        vals = tuple(v.initial_value for v in self.model.variables)
        return leaves, vals, ()

    def step(self, node: tuple, event: str | None):
        """One macro-step. Returns (successor, fired transitions, fired rules)."""
        leaves, vals, queue = node
        active = set()
        for leaf in leaves:
            active.update(self.leaf_ancestors[leaf])
        taken: list[_CompiledTransition] = []
        exited_leaves: set[Node] = set()
        exit_sets = []
        for c in self.by_event[event]:
            if c.source not in active:
                continue
            if c.guard is not None and not c.guard(vals):
                continue
            mine = {leaf for leaf in leaves if leaf.is_descendant_of(c.exit_root)}
            if mine & exited_leaves:
                continue
            exited_leaves |= mine
            taken.append(c)
            exit_sets.append(mine)
        actions: list = []
        for c, mine in zip(taken, exit_sets):
            exited = {a for leaf in mine for a in self.leaf_ancestors[leaf]
                      if a.is_descendant_of(c.exit_root)}
            for n in exited:
                actions.extend(n.state.exit)
            actions.extend(c.t.actions)
            for n in c.entered:
                actions.extend(n.state.entry)
        fired_rules = []
        for r, r_event, trigger, cond in self.rules:
            if r_event is not None:
                if r_event != event:
                    continue
            elif not trigger(vals):
                continue
            if cond is not None and not cond(vals):
                continue
            fired_rules.append(r.name)
            actions.extend(r.actions)
        if not taken and not fired_rules:
            return node, (), ()
        new_vals = list(vals)
        emitted = []
        for a in sorted(actions, key=lambda a: (a.pos.line, a.pos.col)):
            if isinstance(a, Assign):
                new_vals[self.slots[a.variable]] = a.value
            elif isinstance(a, Emit):
                emitted.append(a.event)
        new_leaves = set(leaves) - exited_leaves
        for c in taken:
            new_leaves |= c.entered_leaves
        succ = (tuple(sorted(new_leaves, key=lambda n: n.order)), tuple(new_vals),
                queue + tuple(emitted))
        return succ, tuple(c.index for c in taken), tuple(fired_rules)

    def successors(self, node: tuple):
        """(event, successor, fired, rules) for every step available from ``node``."""
        leaves, vals, queue = node
        if queue:
            ev = queue[0]
            succ, fired, rules = self.step((leaves, vals, queue[1:]), ev)
            yield ev, succ, fired, rules
            return
        for ev in (None, *self.alphabet):
            succ, fired, rules = self.step(node, ev)
            yield ev, succ, fired, rules

    def configuration(self, node: tuple) -> Configuration:
        leaves, vals, _ = node
        controls = tuple(sorted((self.chart.region_path(n), n.name) for n in leaves))
        return Configuration(controls, tuple(zip(self.var_names, vals)))


def explore(m: Model, limits: ExploreLimits = ExploreLimits()) -> ReachSet:
    """Breadth-first fixed point from the initial configuration.

    Raises ProductTooLarge before exploring if the static bound is over the
    configuration limit, and LimitExceeded (with a partial result) if a
    configuration, step or queue limit is hit while exploring.
    """
    bound = static_bound(m)
    if bound > limits.max_configurations:
        raise ProductTooLarge(bound, limits.max_configurations)
    stepper = Stepper(m, limits)
    start = stepper.initial()
    seen = {start}
    frontier = deque([start])
    fired: set[int] = set()
    rules: set[str] = set()
    steps = 0

    def result(exhausted: bool) -> ReachSet:
        return ReachSet(frozenset(stepper.configuration(n) for n in seen), frozenset(fired),
                        exhausted, frozenset(rules), stepper.configuration(start))

    while frontier:
        node = frontier.popleft()
        for _, succ, fired_now, rules_now in stepper.successors(node):
            if steps >= limits.max_steps:
                raise LimitExceeded(f"more than {limits.max_steps} steps", result(False))
            steps += 1
            fired.update(fired_now)
            rules.update(rules_now)
            if len(succ[2]) > limits.max_queue:
                raise LimitExceeded(f"event queue exceeded depth {limits.max_queue}", result(False))
            if succ not in seen:
                if len(seen) >= limits.max_configurations:
                    raise LimitExceeded(
                        f"more than {limits.max_configurations} configurations", result(False))
                seen.add(succ)
                frontier.append(succ)
    return result(True)


# --- findings -----------------------------------------------------------------

def unreachable_composites(m: Model, r: ReachSet) -> list[Finding]:
    """One finding per never-reached combination of a parallel state's region children."""
    chart = Chart(m)
    active_sets = []
    for c in r.configurations:
        active = set()
        for name in c.active_basic:
            node = chart.states[name]
            active.add(node)
            active.update(node.ancestors())
        active_sets.append(active)
    severity = "warning" if r.exhausted else "question"
    out = []
    for p in chart.parallel_states:
        reached = set()
        for active in active_sets:
            if p in active:
                reached.add(tuple(next(c.name for c in region.children if c in active)
                                  for region in p.children))
        for combo in itertools.product(*[[c.name for c in region.children] for region in p.children]):
            if combo in reached:
                continue
            parts = ", ".join(f"{region.name}={name}" for region, name in zip(p.children, combo))
            out.append(make_finding(
                "SPEC_ORTHOGONALITY", severity, (p.name, *combo),
                f"The combination ({parts}) of parallel state {p.name} is never reached. "
                "Is it intended that this combination can never occur, and what in the "
                "domain or the design rules it out?",
                f"{len(reached)} of {prod(len(region.children) for region in p.children)} "
                f"combinations reached; exploration {'complete' if r.exhausted else 'partial'}",
                m.filename, p.state.line))
    return out


def completeness_anomalies(m: Model, r: ReachSet) -> list[Finding]:
    """Never-active basic states, sink states, and events that never fire a transition."""
    chart = Chart(m)
    out = []
    active = set()
    for c in r.configurations:
        active |= c.active_basic
    sources = {t.source for t in m.transitions}
    for leaf in chart.basic_states:
        s = leaf.state
        if leaf.name not in active:
            out.append(make_finding(
                "SPEC_COMPLETENESS", "warning" if r.exhausted else "question",
                (leaf.name,),
                f"State {leaf.name} is never active in any reachable configuration. "
                "Is there a real-world way into this condition that the model omits, "
                "or is the state obsolete?",
                "no reachable configuration contains it"
                + ("" if r.exhausted else " (exploration partial)"),
                m.filename, s.line))
        # a never-active state's exits are moot; its id would also collide
        elif not any(a.name in sources for a in [leaf, *leaf.ancestors()] if a.is_state):
            out.append(make_finding(
                "SPEC_COMPLETENESS", "question", (leaf.name,),
                f"State {leaf.name} has no outgoing transition, neither its own nor "
                "inherited from an enclosing state. Does the real-world condition it "
                "represents truly have no exit, and do the modeled transitions cover every "
                "way into and out of it?",
                "sink state",
                m.filename, s.line))
    fired_events = {m.transitions[i].event for i in r.fired_transitions}
    fired_events |= {rule.event for rule in m.rules if rule.name in r.fired_rules}
    for ev in m.events:
        if ev in fired_events:
            continue
        out.append(make_finding(
            "SPEC_COMPLETENESS", "question", (ev,),
            f"Event {ev} never triggers any transition or rule in any reachable "
            "configuration. Is it meant to be handled somewhere, or is its arrival "
            "assumed to be impossible?",
            "no fired transition or rule is labelled with it",
            m.filename, m.event_line(ev)))
    return out


def describe_configuration(c: Configuration) -> str:
    states = ", ".join(name for _, name in c.controls)
    vals = ", ".join(f"{n}={render_value(v)}" for n, v in c.valuation)
    return f"[{states}]" + (f" {{{vals}}}" if vals else "")
