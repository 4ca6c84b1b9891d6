"""Recursive-descent parser for the modeling DSL.

Grammar (terminals quoted)::

    model      := "model" IDENT item*
    item       := vardecl | setdecl | statedecl | transdecl | ruledecl
    vardecl    := "var" IDENT ":" vtype ["=" literal]
    vtype      := "bool" | "enum" "{" IDENT ("," IDENT)* "}" | "int" "[" INT ".." INT "]"
    setdecl    := "set" IDENT ["disjoint" IDENT ("," IDENT)*] "{" IDENT ("," IDENT)* "}"
    statedecl  := "state" IDENT ["compound" | "parallel"] ["{" stateitem* "}"]
    stateitem  := statedecl | regiondecl | transdecl | "initial" IDENT
                | "entry" "do" actions | "exit" "do" actions
    regiondecl := "region" IDENT "{" stateitem* "}"
    transdecl  := "trans" IDENT "->" IDENT ["on" IDENT] ["when" expr] ["do" actions]
    ruledecl   := "rule" IDENT ["priority" INT] ":" "when" trigger ["if" expr] "do" actions
    trigger    := "event" IDENT | "cond" expr
    actions    := action ("," action)*
    action     := "set" IDENT "=" literal | "emit" IDENT

Dangling names are not checked here; see :mod:`tacit_audit.validate`.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

from .model import (
    Action, Assign, BoolOp, Compare, Domain, Emit, EntitySet, Expr, Lit, Model,
    Name, Not, Pos, Region, Rule, State, Transition, Variable,
)

KEYWORDS = frozenset("""
    model var bool enum int set disjoint state compound parallel region trans
    on when do initial entry exit rule priority event cond if emit true false
""".split())

_TOKEN_RE = re.compile(r"""
    (?P<ws>[ \t\r\f\v]+)
  | (?P<nl>\n)
  | (?P<comment>\#[^\n]*)
  | (?P<ident>[A-Za-z_][A-Za-z0-9_]*)
  | (?P<int>-?[0-9]+)
  | (?P<sym>->|\.\.|&&|\|\||==|!=|<=|>=|[<>!=:,{}\[\]()])
""", re.VERBOSE)


class ParseError(Exception):
    """Raised on the first syntax error; carries a 1-based line and column."""

    def __init__(self, line: int, col: int, expected: str, found: str):
        self.line = line
        self.col = col
        self.expected = expected
        self.found = found
        super().__init__(f"line {line}, column {col}: expected {expected}, found {found}")


@dataclass(frozen=True)
class Token:
    kind: str  # "ident" | "kw" | "int" | "sym" | "eof"
    text: str
    line: int
    col: int

    def describe(self) -> str:
        if self.kind == "eof":
            return "end of input"
        return repr(self.text)


def tokenize(text: str) -> list[Token]:
    tokens: list[Token] = []
    line, line_start, i = 1, 0, 0
    while i < len(text):
        m = _TOKEN_RE.match(text, i)
        if m is None:
            raise ParseError(line, i - line_start + 1, "a token", repr(text[i]))
        kind = m.lastgroup
        col = i - line_start + 1
        if kind == "nl":
            line += 1
            line_start = m.end()
        elif kind == "ident":
            word = m.group()
            tokens.append(Token("kw" if word in KEYWORDS else "ident", word, line, col))
        elif kind in ("int", "sym"):
            tokens.append(Token(kind, m.group(), line, col))
        i = m.end()
    tokens.append(Token("eof", "", line, i - line_start + 1))
    return tokens


class _Parser:
    def __init__(self, tokens: list[Token], filename: str):
        self.toks = tokens
        self.i = 0
        self.filename = filename
        self.transitions: list[Transition] = []
        self.misplaced: list[tuple[str, Pos]] = []

    # -- token helpers --
    @property
    def tok(self) -> Token:
        return self.toks[self.i]

    def at(self, text: str) -> bool:
        t = self.tok
        return t.kind in ("kw", "sym") and t.text == text

    def advance(self) -> Token:
        t = self.tok
        if t.kind != "eof":
            self.i += 1
        return t

    def fail(self, expected: str) -> ParseError:
        t = self.tok
        return ParseError(t.line, t.col, expected, t.describe())

    def expect(self, text: str) -> Token:
        if not self.at(text):
            raise self.fail(repr(text))
        return self.advance()

    def ident(self) -> Token:
        if self.tok.kind != "ident":
            raise self.fail("identifier")
        return self.advance()

    def integer(self) -> int:
        if self.tok.kind != "int":
            raise self.fail("integer")
        return int(self.advance().text)

    def pos(self) -> Pos:
        return Pos(self.tok.line, self.tok.col)

    # -- grammar --
    def model(self) -> Model:
        start = self.pos()
        self.expect("model")
        name = self.ident().text
        states: list[State] = []
        variables: list[Variable] = []
        sets: list[EntitySet] = []
        rules: list[Rule] = []
        while self.tok.kind != "eof":
            if self.at("var"):
                variables.append(self.vardecl())
            elif self.at("set"):
                sets.append(self.setdecl())
            elif self.at("state"):
                states.append(self.statedecl())
            elif self.at("trans"):
                self.transdecl(owner=None)
            elif self.at("rule"):
                rules.append(self.ruledecl())
            else:
                raise self.fail("'var', 'set', 'state', 'trans' or 'rule'")
        transitions = tuple(
            Transition(t.source, t.target, t.event, t.guard, t.actions, t.pos, t.owner, k)
            for k, t in enumerate(sorted(self.transitions, key=lambda t: (t.pos.line, t.pos.col)))
        )
        return Model(name, tuple(states), transitions, tuple(variables), tuple(rules),
                     tuple(sets), self.filename, start, tuple(self.misplaced))

    def literal(self) -> tuple[object, bool]:
        """Returns (value, written_as_identifier)."""
        t = self.tok
        if t.kind == "int":
            return int(self.advance().text), False
        if self.at("true") or self.at("false"):
            return self.advance().text == "true", False
        if t.kind == "ident":
            return self.advance().text, True
        raise self.fail("literal")

    def vardecl(self) -> Variable:
        pos = self.pos()
        self.expect("var")
        name = self.ident().text
        self.expect(":")
        if self.at("bool"):
            self.advance()
            domain = Domain("bool")
        elif self.at("enum"):
            self.advance()
            self.expect("{")
            lits = [self.ident().text]
            while self.at(","):
                self.advance()
                lits.append(self.ident().text)
            self.expect("}")
            domain = Domain("enum", literals=tuple(lits))
        elif self.at("int"):
            self.advance()
            self.expect("[")
            lo = self.integer()
            self.expect("..")
            hi = self.integer()
            self.expect("]")
            domain = Domain("int", lo=lo, hi=hi)
        else:
            raise self.fail("'bool', 'enum' or 'int'")
        initial, is_name = None, False
        if self.at("="):
            self.advance()
            initial, is_name = self.literal()
        return Variable(name, domain, initial, pos, is_name)

    def setdecl(self) -> EntitySet:
        pos = self.pos()
        self.expect("set")
        name = self.ident().text
        disjoint: list[str] = []
        if self.at("disjoint"):
            self.advance()
            disjoint.append(self.ident().text)
            while self.at(","):
                self.advance()
                disjoint.append(self.ident().text)
        self.expect("{")
        members = [self.ident().text]
        while self.at(","):
            self.advance()
            members.append(self.ident().text)
        self.expect("}")
        return EntitySet(name, tuple(members), tuple(disjoint), pos)

    def statedecl(self) -> State:
        pos = self.pos()
        self.expect("state")
        name = self.ident().text
        declared = None
        if self.at("compound") or self.at("parallel"):
            declared = self.advance().text
        children: list[State] = []
        regions: list[Region] = []
        initials: list[str] = []
        entry: list[Action] = []
        exit_: list[Action] = []
        if self.at("{"):
            self.advance()
            self.body(name, children, regions, initials, entry, exit_)
            self.expect("}")
        if declared:
            kind = declared
        elif regions:
            kind = "parallel"
        elif children:
            kind = "compound"
        else:
            kind = "basic"
        return State(name, kind, tuple(children), tuple(regions), tuple(initials),
                     tuple(entry), tuple(exit_), pos, declared)

    def body(self, owner, children, regions, initials, entry, exit_) -> None:
        while not self.at("}"):
            if self.at("state"):
                children.append(self.statedecl())
            elif self.at("region"):
                regions.append(self.regiondecl(owner))
            elif self.at("trans"):
                self.transdecl(owner)
            elif self.at("initial"):
                self.advance()
                initials.append(self.ident().text)
            elif self.at("entry") or self.at("exit"):
                which = self.advance().text
                self.expect("do")
                (entry if which == "entry" else exit_).extend(self.actions())
            else:
                raise self.fail("'state', 'region', 'trans', 'initial', 'entry', 'exit' or '}'")

    def regiondecl(self, owner: str) -> Region:
        pos = self.pos()
        self.expect("region")
        name = self.ident().text
        self.expect("{")
        children: list[State] = []
        regions: list[Region] = []
        initials: list[str] = []
        entry: list[Action] = []
        exit_: list[Action] = []
        self.body(owner, children, regions, initials, entry, exit_)
        self.expect("}")
        # regions have no nested regions or entry/exit of their own
        for r in regions:
            self.misplaced.append((f"region {r.name} directly inside region {name}", r.pos))
        if entry or exit_:
            self.misplaced.append((f"entry/exit actions directly inside region {name}", pos))
        return Region(name, tuple(children), tuple(initials), pos)

    def transdecl(self, owner: str | None) -> None:
        pos = self.pos()
        self.expect("trans")
        source = self.ident().text
        self.expect("->")
        target = self.ident().text
        event = guard = None
        actions: tuple[Action, ...] = ()
        if self.at("on"):
            self.advance()
            event = self.ident().text
        if self.at("when"):
            self.advance()
            guard = self.expr()
        if self.at("do"):
            self.advance()
            actions = tuple(self.actions())
        self.transitions.append(Transition(source, target, event, guard, actions, pos, owner))

    def ruledecl(self) -> Rule:
        pos = self.pos()
        self.expect("rule")
        name = self.ident().text
        priority = None
        if self.at("priority"):
            self.advance()
            priority = self.integer()
        self.expect(":")
        self.expect("when")
        event = trigger = None
        if self.at("event"):
            self.advance()
            event = self.ident().text
        elif self.at("cond"):
            self.advance()
            trigger = self.expr()
        else:
            raise self.fail("'event' or 'cond'")
        condition = None
        if self.at("if"):
            self.advance()
            condition = self.expr()
        self.expect("do")
        return Rule(name, priority, event, trigger, condition, tuple(self.actions()), pos)

    def actions(self) -> list[Action]:
        out = [self.action()]
        while self.at(","):
            self.advance()
            out.append(self.action())
        return out

    def action(self) -> Action:
        pos = self.pos()
        if self.at("set"):
            self.advance()
            var = self.ident().text
            self.expect("=")
            value, is_name = self.literal()
            return Assign(var, value, pos, is_name)
        if self.at("emit"):
            self.advance()
            return Emit(self.ident().text, pos)
        raise self.fail("'set' or 'emit'")

    # expressions: || binds loosest, then &&, then !, then comparison
    def expr(self) -> Expr:
        left = self.conj()
        while self.at("||"):
            self.advance()
            left = BoolOp("||", left, self.conj())
        return left

    def conj(self) -> Expr:
        left = self.unary()
        while self.at("&&"):
            self.advance()
            left = BoolOp("&&", left, self.unary())
        return left

    def unary(self) -> Expr:
        if self.at("!"):
            self.advance()
            return Not(self.unary())
        left = self.primary()
        if self.tok.kind == "sym" and self.tok.text in ("==", "!=", "<", "<=", ">", ">="):
            op = self.advance().text
            return Compare(op, left, self.primary())
        return left

    def primary(self) -> Expr:
        t = self.tok
        if t.kind == "ident":
            return Name(self.advance().text)
        if t.kind == "int":
            return Lit(int(self.advance().text))
        if self.at("true") or self.at("false"):
            return Lit(self.advance().text == "true")
        if self.at("("):
            self.advance()
            e = self.expr()
            self.expect(")")
            return e
        raise self.fail("expression")


def parse_model(text: str, filename: str = "<model>") -> Model:
    """Parse DSL source into a :class:`Model`; raises :class:`ParseError`."""
    parser = _Parser(tokenize(text), filename)
    return parser.model()
