"""Bisimilarity, bisimulation collapse, and language equivalence of process graphs."""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Hashable, Mapping

from .graph import ProcessGraph, garbage_collect, reachable


@dataclass(frozen=True)
class BisimRelation:
    """A bisimulation between two graphs, as pairs ``(v1, v2)``."""

    pairs: frozenset[tuple[str, str]]

    def __bool__(self):
        return True

    def to_json_obj(self) -> list[list[str]]:
        return [list(p) for p in sorted(self.pairs)]


@dataclass(frozen=True)
class NotBisimilar:
    """Negative verdict; ``witness`` is a pair of vertices separated by refinement."""

    witness: tuple[str, str]
    rounds: int

    def __bool__(self):
        return False


def refine(
    vertices: list[Hashable],
    succ: Mapping[Hashable, list[tuple[str, Hashable]]],
    terminating: set,
) -> tuple[dict[Hashable, int], list[dict[Hashable, int]]]:
    """Coarsest stable partition (naive signature refinement).

    Returns the final block numbering and the numbering after every round,
    so callers can tell when two vertices got separated.
    """
    block = {v: int(v in terminating) for v in vertices}
    history = [block]
    while True:
        sigs: dict[tuple, int] = {}
        new = {}
        for v in vertices:
            sig = (block[v], frozenset((a, block[w]) for a, w in succ[v]))
            new[v] = sigs.setdefault(sig, len(sigs))
        history.append(new)
        if len(sigs) == len(set(block.values())):
            return new, history
        block = new


def _partition(g: ProcessGraph) -> dict[str, int]:
    g = garbage_collect(g)
    succ = {v: [(a, t) for _, a, t in ts] for v, ts in g.successors().items()}
    block, _ = refine(sorted(g.vertices), succ, set(g.terminating))
    return block


def bisimilar(g1: ProcessGraph, g2: ProcessGraph) -> BisimRelation | NotBisimilar:
    """Decide ``g1`` and ``g2`` bisimilar on their reachable parts.

    Works on the disjoint union; on success returns the largest bisimulation.
    """
    g1 = garbage_collect(g1)
    g2 = garbage_collect(g2)
    verts = [(0, v) for v in sorted(g1.vertices)] + [(1, v) for v in sorted(g2.vertices)]
    succ: dict = {}
    for side, g in ((0, g1), (1, g2)):
        for v, ts in g.successors().items():
            succ[(side, v)] = [(a, (side, t)) for _, a, t in ts]
    term = {(0, v) for v in g1.terminating} | {(1, v) for v in g2.terminating}
    block, history = refine(verts, succ, term)
    s1, s2 = (0, g1.start), (1, g2.start)
    if block[s1] != block[s2]:
        rounds = next(i for i, b in enumerate(history) if b[s1] != b[s2])
        return NotBisimilar((g1.start, g2.start), rounds)
    pairs = frozenset(
        (u, v) for u in g1.vertices for v in g2.vertices if block[(0, u)] == block[(1, v)]
    )
    return BisimRelation(pairs)


def is_bisimulation(g1: ProcessGraph, g2: ProcessGraph, pairs) -> bool:
    """Check the transfer and termination conditions for a candidate relation."""
    pairs = set(pairs)
    if (g1.start, g2.start) not in pairs:
        return False
    s1, s2 = g1.successors(), g2.successors()
    for u, v in pairs:
        if (u in g1.terminating) != (v in g2.terminating):
            return False
        for _, a, u2 in s1[u]:
            if not any(b == a and (u2, v2) in pairs for _, b, v2 in s2[v]):
                return False
        for _, b, v2 in s2[v]:
            if not any(a == b and (u2, v2) in pairs for _, a, u2 in s1[u]):
                return False
    return True


def collapse(g: ProcessGraph) -> tuple[ProcessGraph, dict[str, str]]:
    """Bisimulation collapse and the projection onto it.

    Each block is named after its lexicographically least member.
    """
    g = garbage_collect(g)
    block = _partition(g)
    names: dict[int, str] = {}
    for v in sorted(g.vertices):
        names.setdefault(block[v], v)
    proj = {v: names[block[v]] for v in g.vertices}
    g0 = ProcessGraph(
        frozenset(names.values()),
        proj[g.start],
        frozenset((proj[s], a, proj[t]) for s, a, t in g.transitions),
        frozenset(proj[v] for v in g.terminating),
    )
    return g0, proj


def is_functional_bisim(g1: ProcessGraph, g2: ProcessGraph, m: Mapping[str, str]) -> bool:
    """Whether ``m`` is a functional bisimulation from ``g1`` to ``g2``."""
    r1 = reachable(g1)
    if any(v not in m or m[v] not in g2.vertices for v in r1):
        return False
    if m[g1.start] != g2.start:
        return False
    s1, s2 = g1.successors(), g2.successors()
    for u in r1:
        v = m[u]
        if (u in g1.terminating) != (v in g2.terminating):
            return False
        forth = {(a, m[t]) for _, a, t in s1[u]}
        back = {(a, t) for _, a, t in s2[v]}
        if forth != back:
            return False
    return True


def isomorphic(g1: ProcessGraph, g2: ProcessGraph) -> bool:
    """Isomorphism of reachable parts, for graphs without bisimilar vertex pairs.

    On collapsed graphs the unique bisimulation between them is the only
    candidate isomorphism, so checking that it is a bijection suffices.
    """
    g1, g2 = garbage_collect(g1), garbage_collect(g2)
    if len(g1.vertices) != len(g2.vertices) or len(g1.transitions) != len(g2.transitions):
        return False
    rel = bisimilar(g1, g2)
    if not rel:
        return False
    m = dict(rel.pairs)
    if len(m) != len(rel.pairs) or len(set(m.values())) != len(m):
        return False
    return {(m[s], a, m[t]) for s, a, t in g1.transitions} == set(g2.transitions)


# -- language semantics ---------------------------------------------------------


def _determinize_step(succ, states: frozenset, a: str) -> frozenset:
    return frozenset(t for s in states for _, b, t in succ[s] if b == a)


def distinguishing_word(g1: ProcessGraph, g2: ProcessGraph) -> tuple[str, ...] | None:
    """A shortest word accepted by exactly one graph, or ``None``.

    Graphs are read as NFAs whose accepting states are the terminating vertices;
    the subset constructions of both are explored in product, breadth first.
    """
    alphabet = sorted(g1.labels() | g2.labels())
    succ1, succ2 = g1.successors(), g2.successors()
    init = (frozenset({g1.start}), frozenset({g2.start}))
    seen = {init: ()}
    queue = deque([init])
    while queue:
        p1, p2 = queue.popleft()
        w = seen[(p1, p2)]
        if bool(p1 & g1.terminating) != bool(p2 & g2.terminating):
            return w
        for a in alphabet:
            nxt = (_determinize_step(succ1, p1, a), _determinize_step(succ2, p2, a))
            if nxt not in seen:
                seen[nxt] = w + (a,)
                queue.append(nxt)
    return None


def lang_equiv(g1: ProcessGraph, g2: ProcessGraph) -> bool:
    return distinguishing_word(g1, g2) is None


def accepts(g: ProcessGraph, word) -> bool:
    succ = g.successors()
    states = frozenset({g.start})
    for a in word:
        states = _determinize_step(succ, states, a)
    return bool(states & g.terminating)
