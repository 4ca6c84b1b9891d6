"""Naive reference for reachability over flat orthogonal models.

Independent of the production explorer: it works on the generator's plain
description (not the parsed AST), materializes every product state, builds
the full successor table and then runs a plain BFS.
"""

import itertools
import random
from collections import deque

EVENTS = ("e", "f", "g")


def random_spec(rng: random.Random):
    n_regions = rng.randint(1, 3)
    regions = [[f"S{r}_{i}" for i in range(rng.randint(1, 4))] for r in range(n_regions)]
    variables = [(f"v{k}", rng.random() < 0.5) for k in range(rng.randint(0, 3))]
    transitions = []
    for _ in range(rng.randint(0, 10)):
        r = rng.randrange(n_regions)
        src = rng.randrange(len(regions[r]))
        tgt = rng.randrange(len(regions[r]))
        event = rng.choice(EVENTS + (None,) if rng.random() < 0.15 else EVENTS)
        guard = random_guard(rng, [v for v, _ in variables], 2) if variables and rng.random() < 0.5 else None
        assigns = []
        if variables:
            for _ in range(rng.randint(0, 2)):
                assigns.append((rng.choice(variables)[0], rng.random() < 0.5))
        transitions.append((r, src, tgt, event, guard, assigns))
    return {"regions": regions, "variables": variables, "transitions": transitions}


def random_guard(rng, names, depth):
    kind = rng.choice(["var", "eq", "not", "and", "or"] if depth else ["var", "eq"])
    if kind == "var":
        return ("var", rng.choice(names))
    if kind == "eq":
        return ("eq", rng.choice(names), rng.random() < 0.5)
    if kind == "not":
        return ("not", random_guard(rng, names, depth - 1))
    return (kind, random_guard(rng, names, depth - 1), random_guard(rng, names, depth - 1))


def render_guard(g):
    kind = g[0]
    if kind == "var":
        return g[1]
    if kind == "eq":
        return f"{g[1]} == {'true' if g[2] else 'false'}"
    if kind == "not":
        return f"!({render_guard(g[1])})"
    op = "&&" if kind == "and" else "||"
    return f"({render_guard(g[1])} {op} {render_guard(g[2])})"


def render_spec(spec, extra=()):
    lines = ["model Rand"]
    for name, init in spec["variables"]:
        lines.append(f"var {name}: bool = {'true' if init else 'false'}")
    regions = spec["regions"]
    if len(regions) == 1:
        lines += [f"state {s}" for s in regions[0]]
    else:
        lines.append("state P parallel {")
        for r, states in enumerate(regions):
            lines.append(f"  region R{r} {{")
            lines.append(f"    initial {states[0]}")
            lines += [f"    state {s}" for s in states]
            lines.append("  }")
        lines.append("}")
    for r, src, tgt, event, guard, assigns in list(spec["transitions"]) + list(extra):
        text = f"trans {regions[r][src]} -> {regions[r][tgt]}"
        if event:
            text += f" on {event}"
        if guard is not None:
            text += f" when {render_guard(guard)}"
        if assigns:
            text += " do " + ", ".join(f"set {v} = {'true' if b else 'false'}" for v, b in assigns)
        lines.append(text)
    return "\n".join(lines) + "\n"


def eval_guard(g, env):
    kind = g[0]
    if kind == "var":
        return env[g[1]]
    if kind == "eq":
        return env[g[1]] == g[2]
    if kind == "not":
        return not eval_guard(g[1], env)
    if kind == "and":
        return eval_guard(g[1], env) and eval_guard(g[2], env)
    return eval_guard(g[1], env) or eval_guard(g[2], env)


def oracle_reachable(spec, extra=()):
    """Reachable (controls, valuation) pairs in the production Configuration shape."""
    regions = spec["regions"]
    names = [v for v, _ in spec["variables"]]
    transitions = list(spec["transitions"]) + list(extra)
    alphabet = sorted({t[3] for t in transitions if t[3]})
    steps = [None] + alphabet

    def successor(state, event):
        leaves, vals = state
        env = dict(zip(names, vals))
        new_leaves = list(leaves)
        fired = []
        for r in range(len(regions)):
            for t in transitions:
                tr, src, tgt, ev, guard, _ = t
                if tr != r or src != leaves[r]:
                    continue
                if ev is not None and ev != event:
                    continue
                if guard is not None and not eval_guard(guard, env):
                    continue
                new_leaves[r] = tgt
                fired.append(t)
                break
        new_env = dict(env)
        for t in transitions:  # document order
            if any(t is f for f in fired):
                for var, value in t[5]:
                    new_env[var] = value
        return tuple(new_leaves), tuple(new_env[n] for n in names)

    product = list(itertools.product(
        itertools.product(*[range(len(s)) for s in regions]),
        itertools.product((False, True), repeat=len(names))))
    table = {state: [successor(state, ev) for ev in steps] for state in product}
    start = (tuple(0 for _ in regions), tuple(init for _, init in spec["variables"]))
    seen = {start}
    queue = deque([start])
    while queue:
        for nxt in table[queue.popleft()]:
            if nxt not in seen:
                seen.add(nxt)
                queue.append(nxt)

    out = set()
    for leaves, vals in seen:
        if len(regions) == 1:
            controls = (("", regions[0][leaves[0]]),)
        else:
            controls = tuple(sorted((f"R{r}", regions[r][i]) for r, i in enumerate(leaves)))
        out.add((controls, tuple(zip(names, vals))))
    return out
