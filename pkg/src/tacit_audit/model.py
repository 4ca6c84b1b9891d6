"""Immutable AST for the modeling DSL.

Everything here is a frozen dataclass holding tuples, so a parsed model can
be shared freely between analyses.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterator, Union

Value = Union[bool, int, str]


# --- expressions ------------------------------------------------------------

@dataclass(frozen=True)
class Name:
    """A bare identifier: a variable reference or an enumeration literal."""
    id: str


@dataclass(frozen=True)
class Lit:
    value: Value


@dataclass(frozen=True)
class Not:
    operand: "Expr"


@dataclass(frozen=True)
class BoolOp:
    op: str  # "&&" | "||"
    left: "Expr"
    right: "Expr"


@dataclass(frozen=True)
class Compare:
    op: str  # == != < <= > >=
    left: "Expr"
    right: "Expr"


Expr = Union[Name, Lit, Not, BoolOp, Compare]

_PREC = {"||": 1, "&&": 2}


def render_expr(e: Expr, _prec: int = 0) -> str:
    """Canonical single-spaced text of an expression."""
    if isinstance(e, Name):
        return e.id
    if isinstance(e, Lit):
        return render_value(e.value)
    if isinstance(e, Not):
        return "!" + render_expr(e.operand, 3)
    if isinstance(e, Compare):
        text = f"{render_expr(e.left, 4)} {e.op} {render_expr(e.right, 4)}"
        return f"({text})" if _prec > 3 else text
    prec = _PREC[e.op]
    text = f"{render_expr(e.left, prec)} {e.op} {render_expr(e.right, prec + 1)}"
    return f"({text})" if _prec > prec else text


def render_value(v: Value) -> str:
    if isinstance(v, bool):
        return "true" if v else "false"
    return str(v)


def expr_names(e: Expr | None) -> Iterator[str]:
    """Yield every bare identifier in ``e`` (variables and enum literals)."""
    if e is None:
        return
    if isinstance(e, Name):
        yield e.id
    elif isinstance(e, Not):
        yield from expr_names(e.operand)
    elif isinstance(e, (BoolOp, Compare)):
        yield from expr_names(e.left)
        yield from expr_names(e.right)


def expr_literals(e: Expr | None) -> Iterator[Name | Lit]:
    """Yield leaves that denote constants.

    Enumeration literals appear as :class:`Name` nodes; callers separate
    them from variable references using the model's declarations.
    """
    if e is None:
        return
    if isinstance(e, (Name, Lit)):
        yield e
    elif isinstance(e, Not):
        yield from expr_literals(e.operand)
    else:
        yield from expr_literals(e.left)
        yield from expr_literals(e.right)


# --- declarations -----------------------------------------------------------

@dataclass(frozen=True)
class Pos:
    line: int
    col: int


@dataclass(frozen=True)
class Assign:
    variable: str
    value: Value
    pos: Pos
    # enum literals are written as identifiers; keep the raw spelling
    is_name: bool = False


@dataclass(frozen=True)
class Emit:
    event: str
    pos: Pos


Action = Union[Assign, Emit]


@dataclass(frozen=True)
class Domain:
    kind: str  # "bool" | "enum" | "int"
    literals: tuple[str, ...] = ()
    lo: int = 0
    hi: int = 0

    def values(self) -> tuple[Value, ...]:
        if self.kind == "bool":
            return (False, True)
        if self.kind == "enum":
            return self.literals
        return tuple(range(self.lo, self.hi + 1))

    def contains(self, v: Value) -> bool:
        if self.kind == "bool":
            return isinstance(v, bool)
        if self.kind == "enum":
            return isinstance(v, str) and v in self.literals
        return isinstance(v, int) and not isinstance(v, bool) and self.lo <= v <= self.hi

    def __str__(self) -> str:
        if self.kind == "bool":
            return "bool"
        if self.kind == "enum":
            return "enum{" + ",".join(self.literals) + "}"
        return f"int[{self.lo}..{self.hi}]"


@dataclass(frozen=True)
class Variable:
    name: str
    domain: Domain
    initial: Value | None  # None: not written, defaults to first domain value
    pos: Pos
    initial_is_name: bool = False

    @property
    def initial_value(self) -> Value:
        if self.initial is None:
            return self.domain.values()[0]
        return self.initial


@dataclass(frozen=True)
class Transition:
    source: str
    target: str
    event: str | None
    guard: Expr | None
    actions: tuple[Action, ...]
    pos: Pos
    owner: str | None = None  # state whose body declares it
    index: int = 0  # document order among all transitions

    @property
    def line(self) -> int:
        return self.pos.line

    def describe(self) -> str:
        text = f"{self.source} -> {self.target}"
        if self.event:
            text += f" on {self.event}"
        if self.guard is not None:
            text += f" when {render_expr(self.guard)}"
        return text


@dataclass(frozen=True)
class Rule:
    name: str
    priority: int | None
    event: str | None  # set for ``when event E``
    trigger: Expr | None  # set for ``when cond C``
    condition: Expr | None
    actions: tuple[Action, ...]
    pos: Pos

    @property
    def line(self) -> int:
        return self.pos.line


@dataclass(frozen=True)
class EntitySet:
    name: str
    members: tuple[str, ...]
    disjoint_with: tuple[str, ...]
    pos: Pos


@dataclass(frozen=True)
class Region:
    name: str
    children: tuple["State", ...]
    initials: tuple[str, ...]  # every ``initial`` statement, in order
    pos: Pos

    @property
    def initial(self) -> str | None:
        return self.initials[0] if self.initials else None


@dataclass(frozen=True)
class State:
    name: str
    kind: str  # "basic" | "compound" | "parallel"
    children: tuple["State", ...] = ()
    regions: tuple[Region, ...] = ()
    initials: tuple[str, ...] = ()
    entry: tuple[Action, ...] = ()
    exit: tuple[Action, ...] = ()
    pos: Pos = Pos(0, 0)
    declared_kind: str | None = None

    @property
    def initial(self) -> str | None:
        return self.initials[0] if self.initials else None

    @property
    def line(self) -> int:
        return self.pos.line


@dataclass(frozen=True)
class Model:
    name: str
    states: tuple[State, ...] = ()
    transitions: tuple[Transition, ...] = ()
    variables: tuple[Variable, ...] = ()
    rules: tuple[Rule, ...] = ()
    sets: tuple[EntitySet, ...] = ()
    filename: str = "<model>"
    pos: Pos = Pos(1, 1)
    # stray ``initial`` statements or items in the wrong place are kept so
    # validation can report them instead of the parser refusing the file
    misplaced: tuple[tuple[str, Pos], ...] = field(default=())

    def iter_states(self) -> Iterator[State]:
        """All states, depth first in document order."""
        def walk(states: tuple[State, ...]) -> Iterator[State]:
            for s in states:
                yield s
                yield from walk(s.children)
                for r in s.regions:
                    yield from walk(r.children)
        return walk(self.states)

    def iter_regions(self) -> Iterator[Region]:
        for s in self.iter_states():
            yield from s.regions

    def state(self, name: str) -> State | None:
        for s in self.iter_states():
            if s.name == name:
                return s
        return None

    def variable(self, name: str) -> Variable | None:
        for v in self.variables:
            if v.name == name:
                return v
        return None

    def iter_actions(self) -> Iterator[Action]:
        for s in self.iter_states():
            yield from s.entry
            yield from s.exit
        for t in self.transitions:
            yield from t.actions
        for r in self.rules:
            yield from r.actions

    @property
    def events(self) -> tuple[str, ...]:
        """Sorted event alphabet: every event in a trigger, transition or emit."""
        names = {t.event for t in self.transitions if t.event}
        names.update(r.event for r in self.rules if r.event)
        names.update(a.event for a in self.iter_actions() if isinstance(a, Emit))
        return tuple(sorted(names))

    def event_line(self, event: str) -> int:
        """Line of the first mention of ``event``."""
        lines = [t.line for t in self.transitions if t.event == event]
        lines += [r.line for r in self.rules if r.event == event]
        lines += [a.pos.line for a in self.iter_actions()
                  if isinstance(a, Emit) and a.event == event]
        return min(lines) if lines else self.pos.line
