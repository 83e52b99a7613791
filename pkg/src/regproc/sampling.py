"""Random regular expressions and process graphs for property tests and demos."""

from __future__ import annotations

import random
from typing import Sequence

from .graph import ProcessGraph
from .regex import ONE, ZERO, Atom, BinStar, Prod, RegExp, Star, Sum

FRAGMENTS = ("general", "star_only", "one_free", "us1f")


def random_regex(
    rng: random.Random,
    max_size: int,
    letters: Sequence[str] = ("a", "b", "c"),
    fragment: str = "general",
    stop: float = 0.25,
) -> RegExp:
    """A random expression with at most ``max_size`` nodes.

    ``stop`` is the chance of placing a leaf before the budget runs out;
    lower values give larger expressions.

    ``fragment`` selects the constructors:

    * ``general`` everything, including ``star2``;
    * ``star_only`` everything except ``star2``;
    * ``one_free`` no ``1`` and no unary star;
    * ``us1f`` no ``1`` and no unary star inside any iteration body.
    """
    if fragment not in FRAGMENTS:
        raise ValueError(f"unknown fragment {fragment!r}")
    if max_size < 1:
        raise ValueError("max_size must be positive")

    def leaf(one_ok: bool) -> RegExp:
        r = rng.random()
        if r < 0.1:
            return ZERO
        if one_ok and r < 0.2:
            return ONE
        return Atom(rng.choice(letters))

    def build(budget: int, mode: str) -> RegExp:
        # mode: "free" (1 and star allowed) or "bare" (neither)
        one_ok = mode == "free"
        if budget == 1 or rng.random() < stop:
            return leaf(one_ok)
        ops = ["sum", "prod"]
        if budget >= 3 and fragment != "star_only":
            ops.append("star2")
        if one_ok and fragment != "one_free":
            ops.append("star")
        if budget < 3:
            ops = [o for o in ops if o == "star"]
            if not ops:
                return leaf(one_ok)
        op = rng.choice(ops)
        if op == "star":
            return Star(build(budget - 1, "bare" if fragment == "us1f" else mode))
        left = rng.randint(1, budget - 2)
        right = rng.randint(1, budget - 1 - left)
        if op == "sum":
            return Sum(build(left, mode), build(right, mode))
        if op == "prod":
            return Prod(build(left, mode), build(right, mode))
        body_mode = "bare" if fragment == "us1f" else mode
        return BinStar(build(left, body_mode), build(right, mode))

    top = "bare" if fragment == "one_free" else "free"
    return build(rng.randint(1, max_size), top)


def random_graph(
    rng: random.Random,
    n_vertices: int,
    n_transitions: int,
    labels: Sequence[str] = ("a", "b"),
    p_terminating: float = 0.3,
) -> ProcessGraph:
    """A random graph on ``v0 .. v{n-1}`` with start ``v0`` (not garbage-collected)."""
    names = [f"v{i}" for i in range(n_vertices)]
    transitions = {
        (rng.choice(names), rng.choice(labels), rng.choice(names)) for _ in range(n_transitions)
    }
    terminating = {v for v in names if rng.random() < p_terminating}
    return ProcessGraph.build(names[0], transitions, terminating, names)


def random_word(rng: random.Random, letters: Sequence[str], max_length: int) -> tuple[str, ...]:
    return tuple(rng.choice(letters) for _ in range(rng.randint(0, max_length)))
