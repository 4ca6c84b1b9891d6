"""Structural validation and the identifier table."""

from __future__ import annotations

import dataclasses
from collections import Counter
from dataclasses import dataclass

from .model import (
    Assign, BoolOp, Compare, Domain, Expr, Lit, Model, Name, Not, Value, expr_names,
    render_value,
)
from .parser import parse_model


@dataclass(frozen=True)
class StructuralError:
    message: str
    line: int

    def __str__(self) -> str:
        return f"line {self.line}: {self.message}"


class ValidationError(Exception):
    def __init__(self, errors: list[StructuralError], filename: str = "<model>"):
        self.errors = errors
        self.filename = filename
        super().__init__("; ".join(str(e) for e in errors))


KINDS = ("state", "region", "variable", "rule", "set", "member", "event")


@dataclass(frozen=True)
class Identifier:
    text: str
    kind: str
    line: int
    owner: str | None = None  # the set a member belongs to
    file: str = "<model>"


def validate_model(m: Model) -> list[StructuralError]:
    """Every invariant violation in ``m``, in line order. Empty means valid."""
    errors: list[StructuralError] = []

    def err(msg: str, line: int) -> None:
        errors.append(StructuralError(msg, line))

    for what, pos in m.misplaced:
        err(f"misplaced {what}", pos.line)

    # unique names per namespace
    def dupes(items, kind):
        seen: dict[str, int] = {}
        for name, line in items:
            if name in seen:
                err(f"duplicate {kind} {name} (first declared on line {seen[name]})", line)
            else:
                seen[name] = line

    states = list(m.iter_states())
    dupes(((s.name, s.line) for s in states), "state")
    dupes(((r.name, r.pos.line) for r in m.iter_regions()), "region")
    dupes(((v.name, v.pos.line) for v in m.variables), "variable")
    dupes(((r.name, r.line) for r in m.rules), "rule")
    dupes(((s.name, s.pos.line) for s in m.sets), "set")
    state_names = {s.name for s in states}

    # state shapes and initial children
    def check_initials(owner: str, initials, children, line):
        names = {c.name for c in children}
        if not initials:
            err(f"{owner} declares no initial child", line)
        elif len(initials) > 1:
            err(f"{owner} declares {len(initials)} initial children", line)
        for ini in initials:
            if ini not in names:
                err(f"{owner}: initial {ini} is not a child", line)

    for s in states:
        where = f"state {s.name}"
        if s.kind == "basic":
            if s.initials:
                err(f"basic {where} declares an initial child", s.line)
        elif s.kind == "compound":
            if s.regions:
                err(f"compound {where} contains regions", s.line)
            if not s.children:
                err(f"compound {where} has no child states", s.line)
            else:
                check_initials(where, s.initials, s.children, s.line)
        else:
            if s.children:
                err(f"parallel {where} contains states outside a region", s.line)
            if s.initials:
                err(f"parallel {where} declares an initial child", s.line)
            if len(s.regions) < 2:
                err(f"parallel {where} has {len(s.regions)} region(s), needs at least 2", s.line)
        for r in s.regions:
            if not r.children:
                err(f"region {r.name} has no child states", r.pos.line)
            else:
                check_initials(f"region {r.name}", r.initials, r.children, r.pos.line)

    # variables
    var_domains: dict[str, Domain] = {}
    enum_literals: set[str] = set()
    for v in m.variables:
        d = v.domain
        if d.kind == "int":
            if d.lo > d.hi:
                err(f"variable {v.name}: empty range {d.lo}..{d.hi}", v.pos.line)
            elif d.hi - d.lo > 255:
                err(f"variable {v.name}: range {d.lo}..{d.hi} exceeds 256 values", v.pos.line)
        if d.kind == "enum":
            for lit, n in Counter(d.literals).items():
                if n > 1:
                    err(f"variable {v.name}: duplicate literal {lit}", v.pos.line)
            enum_literals.update(d.literals)
        if v.initial is not None and not d.contains(v.initial):
            err(f"variable {v.name}: initial value {render_value(v.initial)} not in {d}", v.pos.line)
        var_domains.setdefault(v.name, d)
    for name in sorted(enum_literals & set(var_domains)):
        err(f"enum literal {name} clashes with a variable name", m.variable(name).pos.line)

    # transitions
    for t in m.transitions:
        for end in (t.source, t.target):
            if end not in state_names:
                err(f"unknown state {end}", t.line)
        if t.guard is not None:
            _check_bool(t.guard, var_domains, enum_literals, err, t.line)
        _check_actions(t.actions, var_domains, err)
    for s in states:
        _check_actions(s.entry + s.exit, var_domains, err)

    # rules
    for r in m.rules:
        if r.trigger is not None:
            _check_bool(r.trigger, var_domains, enum_literals, err, r.line)
        if r.condition is not None:
            _check_bool(r.condition, var_domains, enum_literals, err, r.line)
        _check_actions(r.actions, var_domains, err)

    # entity sets
    set_names = {s.name for s in m.sets}
    for es in m.sets:
        for mem, n in Counter(es.members).items():
            if n > 1:
                err(f"set {es.name}: duplicate member {mem}", es.pos.line)
        for other in es.disjoint_with:
            if other not in set_names:
                err(f"set {es.name}: unknown set {other} in disjoint clause", es.pos.line)
            elif other == es.name:
                err(f"set {es.name} declared disjoint with itself", es.pos.line)

    errors.sort(key=lambda e: e.line)
    return errors


def _check_actions(actions, var_domains: dict[str, Domain], err) -> None:
    for a in actions:
        if isinstance(a, Assign):
            d = var_domains.get(a.variable)
            if d is None:
                err(f"assignment to unknown variable {a.variable}", a.pos.line)
            elif not d.contains(a.value):
                err(f"value {render_value(a.value)} not in domain {d} of {a.variable}", a.pos.line)


def _check_bool(e: Expr, var_domains, enum_literals, err, line: int) -> None:
    """Type-check ``e`` as a boolean expression."""
    if isinstance(e, Name):
        d = var_domains.get(e.id)
        if d is None:
            err(f"unknown variable {e.id}", line)
        elif d.kind != "bool":
            err(f"variable {e.id} is {d}, not bool", line)
    elif isinstance(e, Lit):
        if not isinstance(e.value, bool):
            err(f"literal {e.value} used as a condition", line)
    elif isinstance(e, Not):
        _check_bool(e.operand, var_domains, enum_literals, err, line)
    elif isinstance(e, BoolOp):
        _check_bool(e.left, var_domains, enum_literals, err, line)
        _check_bool(e.right, var_domains, enum_literals, err, line)
    else:
        _check_compare(e, var_domains, enum_literals, err, line)


def _check_compare(e: Compare, var_domains, enum_literals, err, line: int) -> None:
    sides = (e.left, e.right)
    if not all(isinstance(s, (Name, Lit)) for s in sides):
        err("comparison operands must be a variable or a literal", line)
        return
    variables = [s for s in sides if isinstance(s, Name) and s.id in var_domains]
    if len(variables) == 2:
        err(f"comparison between two variables {e.left.id} and {e.right.id}", line)
        return
    if not variables:
        for s in sides:
            if isinstance(s, Name):
                err(f"unknown variable {s.id}", line)
                return
        lv, rv = e.left.value, e.right.value
        if type(lv) is not type(rv):
            err("comparison between literals of different types", line)
        elif e.op not in ("==", "!=") and isinstance(lv, bool):
            err(f"ordering comparison {e.op} on booleans", line)
        return
    var = variables[0]
    other = e.right if var is e.left else e.left
    d = var_domains[var.id]
    if isinstance(other, Name):
        value: Value = other.id
        if d.kind != "enum":
            err(f"unknown variable {other.id}", line)
            return
    else:
        value = other.value
    if d.kind == "enum":
        if not (isinstance(value, str) and value in d.literals):
            err(f"{render_value(value)} is not a literal of {var.id}: {d}", line)
        elif e.op not in ("==", "!="):
            err(f"ordering comparison {e.op} on enumeration {var.id}", line)
    elif d.kind == "bool":
        if not isinstance(value, bool):
            err(f"{render_value(value)} compared with boolean {var.id}", line)
        elif e.op not in ("==", "!="):
            err(f"ordering comparison {e.op} on boolean {var.id}", line)
    elif isinstance(value, bool) or not isinstance(value, int):
        err(f"{render_value(value)} compared with integer {var.id}", line)


def symmetrize(m: Model) -> Model:
    """Make every ``disjoint`` declaration hold in both directions."""
    pairs = {(s.name, o) for s in m.sets for o in s.disjoint_with}
    pairs |= {(b, a) for a, b in pairs}
    sets = tuple(
        dataclasses.replace(s, disjoint_with=tuple(sorted(o for a, o in pairs if a == s.name)))
        for s in m.sets
    )
    return dataclasses.replace(m, sets=sets)


def load_model(text: str, filename: str = "<model>") -> Model:
    """Parse and validate; raises ParseError or ValidationError."""
    m = parse_model(text, filename)
    errors = validate_model(m)
    if errors:
        raise ValidationError(errors, filename)
    return symmetrize(m)


def symbol_table(m: Model) -> list[Identifier]:
    """Every named entity once, ordered by kind then name."""
    entries: list[Identifier] = []
    entries += [Identifier(s.name, "state", s.line) for s in m.iter_states()]
    entries += [Identifier(r.name, "region", r.pos.line) for r in m.iter_regions()]
    entries += [Identifier(v.name, "variable", v.pos.line) for v in m.variables]
    entries += [Identifier(r.name, "rule", r.line) for r in m.rules]
    for es in m.sets:
        entries.append(Identifier(es.name, "set", es.pos.line))
        entries += [Identifier(mem, "member", es.pos.line, es.name) for mem in es.members]
    entries += [Identifier(e, "event", m.event_line(e)) for e in m.events]
    rank = {k: i for i, k in enumerate(KINDS)}
    entries = [dataclasses.replace(e, file=m.filename) for e in entries]
    entries.sort(key=lambda e: (rank[e.kind], e.text, e.owner or "", e.line))
    return entries


def variable_names(e: Expr | None, m: Model) -> set[str]:
    """Names in ``e`` that refer to declared variables (enum literals excluded)."""
    declared = {v.name for v in m.variables}
    return {n for n in expr_names(e) if n in declared}

