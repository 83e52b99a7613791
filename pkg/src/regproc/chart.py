"""Process interpretation: the chart of a regular expression.

One-step transitions follow the usual rules for 0, 1, letters, +, . and
unary star, plus (for ``star2``) iteration steps ``e1' . star2(e1, e2)`` and
exit steps ``e2'``. Derivative targets are kept exactly as derived.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from functools import lru_cache

from .graph import ProcessGraph
from .regex import (
    ONE,
    Atom,
    BinStar,
    One,
    Prod,
    RegExp,
    Star,
    Sum,
    Zero,
    letters,
    render,
    terminates,
)


@dataclass(frozen=True)
class Derivative:
    label: str
    target: RegExp


@lru_cache(maxsize=1 << 16)
def derivatives(e: RegExp) -> frozenset[Derivative]:
    """All one-step transitions ``e --a--> e'``."""
    if isinstance(e, (Zero, One)):
        return frozenset()
    if isinstance(e, Atom):
        return frozenset({Derivative(e.letter, ONE)})
    if isinstance(e, Sum):
        return derivatives(e.left) | derivatives(e.right)
    if isinstance(e, Prod):
        result = {Derivative(d.label, Prod(d.target, e.right)) for d in derivatives(e.left)}
        if terminates(e.left):
            result |= derivatives(e.right)
        return frozenset(result)
    if isinstance(e, Star):
        return frozenset(Derivative(d.label, Prod(d.target, e)) for d in derivatives(e.body))
    if isinstance(e, BinStar):
        result = {Derivative(d.label, Prod(d.target, e)) for d in derivatives(e.body)}
        return frozenset(result | derivatives(e.exit))
    raise TypeError(f"not a regular expression: {e!r}")


def step(e: RegExp, a: str) -> frozenset[RegExp]:
    return frozenset(d.target for d in derivatives(e) if d.label == a)


def alphabet(e: RegExp) -> frozenset[str]:
    return letters(e)


def chart_exprs(e: RegExp) -> dict[RegExp, list[tuple[str, RegExp]]]:
    """Reachable expressions of ``e`` with their sorted outgoing steps."""
    succ: dict[RegExp, list[tuple[str, RegExp]]] = {}
    queue = deque([e])
    while queue:
        f = queue.popleft()
        if f in succ:
            continue
        steps = sorted(((d.label, d.target) for d in derivatives(f)), key=lambda p: (p[0], render(p[1])))
        succ[f] = steps
        for _, g in steps:
            if g not in succ:
                queue.append(g)
    return succ


def chart(e: RegExp) -> ProcessGraph:
    """The chart of ``e``; vertex ids are rendered expressions."""
    succ = chart_exprs(e)
    ids = {f: render(f) for f in succ}
    return ProcessGraph(
        frozenset(ids.values()),
        ids[e],
        frozenset((ids[f], a, ids[g]) for f, steps in succ.items() for a, g in steps),
        frozenset(ids[f] for f in succ if terminates(f)),
    )


# Named expressions used by the CLI, the self test and the walkthroughs.
EXPRESSION_FIXTURES = {
    "procsemeq1": "a . (a . (b + b . a))* . 0",
    "procsemeq2": "(1 . (a . a . (b . a)* . b)*) . 0",
    "procsemeq0": "1 . a . (a . (b + b . a))* . 0",
    "rdistr_left": "a . (b + c)",
    "rdistr_right": "a . b + a . c",
}
