"""Navigable index over a model's state tree.

The top-level states form an implicit root region whose initial state is
the first one declared.
"""

from __future__ import annotations

from functools import cached_property

from .model import Model, Region, State

ROOT = ""


class Node:
    __slots__ = ("name", "kind", "parent", "children", "initial", "depth", "state",
                 "region", "order")

    def __init__(self, name: str, kind: str, parent: "Node | None", order: int):
        self.name = name
        self.kind = kind  # root | region | basic | compound | parallel
        self.parent = parent
        self.children: list[Node] = []
        self.initial: Node | None = None
        self.depth = 0 if parent is None else parent.depth + 1
        self.state: State | None = None
        self.region: Region | None = None
        self.order = order

    @property
    def is_state(self) -> bool:
        return self.kind in ("basic", "compound", "parallel")

    @property
    def is_or(self) -> bool:
        return self.kind in ("root", "region", "compound")

    def ancestors(self):
        n = self.parent
        while n is not None:
            yield n
            n = n.parent

    def is_descendant_of(self, other: "Node") -> bool:
        n = self
        while n is not None:
            if n is other:
                return True
            n = n.parent
        return False

    def __repr__(self) -> str:
        return f"Node({self.kind} {self.name!r})"


class Chart:
    """State/region tree with parent links, depths and default entry."""

    def __init__(self, model: Model):
        self.model = model
        self.root = Node(ROOT, "root", None, 0)
        self.states: dict[str, Node] = {}
        self.regions: dict[str, Node] = {}
        self._count = 0
        for s in model.states:
            self.root.children.append(self._add_state(s, self.root))
        self.root.initial = self.root.children[0] if self.root.children else None

    def _next(self) -> int:
        self._count += 1
        return self._count

    def _add_state(self, s: State, parent: Node) -> Node:
        node = Node(s.name, s.kind, parent, self._next())
        node.state = s
        self.states.setdefault(s.name, node)
        if s.kind == "parallel":
            for r in s.regions:
                rn = Node(r.name, "region", node, self._next())
                rn.region = r
                self.regions.setdefault(r.name, rn)
                rn.children = [self._add_state(c, rn) for c in r.children]
                rn.initial = self._pick(rn.children, r.initial)
                node.children.append(rn)
        else:
            node.children = [self._add_state(c, node) for c in s.children]
            node.initial = self._pick(node.children, s.initial)
        return node

    @staticmethod
    def _pick(children: list[Node], name: str | None) -> Node | None:
        for c in children:
            if c.name == name:
                return c
        return children[0] if children and name is None else None

    @cached_property
    def basic_states(self) -> list[Node]:
        return [n for n in self.states.values() if n.kind == "basic"]

    @cached_property
    def parallel_states(self) -> list[Node]:
        return [n for n in self.states.values() if n.kind == "parallel"]

    def or_containers(self) -> list[Node]:
        """Root, regions and compound states, in document order."""
        out = [self.root]
        out += [n for n in self.states.values() if n.kind == "compound"]
        out += list(self.regions.values())
        return sorted(out, key=lambda n: n.order)

    def innermost_region(self, node: Node) -> Node:
        """Nearest enclosing region (or root) of a state."""
        for a in node.ancestors():
            if a.kind in ("region", "root"):
                return a
        return self.root

    def region_path(self, node: Node) -> str:
        """``/``-joined region names from the outermost down; root is ``""``."""
        names = [a.name for a in node.ancestors() if a.kind == "region"]
        return "/".join(reversed(names))

    def descendants(self, node: Node, basic_only: bool = False) -> list[Node]:
        out: list[Node] = []
        stack = list(reversed(node.children))
        while stack:
            n = stack.pop()
            if n.is_state and (not basic_only or n.kind == "basic"):
                out.append(n)
            stack.extend(reversed(n.children))
        return out

    def default_entry(self, node: Node) -> list[Node]:
        """States entered when ``node`` is entered with no explicit target below it."""
        out: list[Node] = []
        stack = [node]
        while stack:
            n = stack.pop()
            if n.is_state:
                out.append(n)
            if n.kind == "parallel":
                stack.extend(reversed(n.children))
            elif n.kind == "region" or n.kind == "compound" or n.kind == "root":
                if n.initial is not None:
                    stack.append(n.initial)
        return out

    def owning_region(self, state_name: str) -> Node | None:
        """The region (child of a parallel state) that contains a state, if any."""
        node = self.states.get(state_name)
        if node is None:
            return None
        for a in node.ancestors():
            if a.kind == "region":
                return a
        return None
