"""Exhaustive enumeration of small graph shapes, and the LEE/LLEE agreement census.

Loop elimination never looks at labels, only at which transitions exist. With
at most ``k`` labels a graph is therefore determined, for this purpose, by a
matrix of edge multiplicities in ``0..k`` plus its termination set. Shapes are
enumerated with every vertex reachable from vertex 0 (anything else is
garbage-collected into a smaller shape) and one representative per class of
vertex permutations fixing 0.
"""

from __future__ import annotations

import itertools
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Iterator

import numpy as np

from .lee import IndexedGraph, _bits


def graph_shapes(n: int, max_transitions: int, max_multiplicity: int = 2) -> np.ndarray:
    """Multiplicity matrices (flattened row-major, shape ``(count, n*n)``).

    Rows have total at most ``max_transitions``, every vertex reachable from
    vertex 0, and are lexicographically least among their images under
    permutations of ``1..n-1`` (base ``max_multiplicity + 1`` code).
    """
    m = n * n
    rows = np.zeros((1, 0), dtype=np.int8)
    sums = np.zeros(1, dtype=np.int16)
    for _ in range(m):
        parts, psums = [], []
        for k in range(max_multiplicity + 1):
            ok = sums + k <= max_transitions
            r = rows[ok]
            parts.append(np.hstack([r, np.full((len(r), 1), k, dtype=np.int8)]))
            psums.append(sums[ok] + k)
        rows = np.vstack(parts)
        sums = np.concatenate(psums)
    adj = (rows.reshape(-1, n, n) > 0).astype(np.int8)
    seen = np.zeros((len(rows), n), dtype=np.int8)
    seen[:, 0] = 1
    for _ in range(n - 1):
        seen = np.maximum(seen, (np.einsum("gi,gij->gj", seen, adj) > 0).astype(np.int8))
    rows = rows[seen.all(axis=1)]

    weights = (max_multiplicity + 1) ** np.arange(m - 1, -1, -1, dtype=np.int64)
    code = rows.astype(np.int64) @ weights
    best = code.copy()
    for p in itertools.permutations(range(1, n)):
        perm = (0,) + p
        idx = [perm[i] * n + perm[j] for i in range(n) for j in range(n)]
        best = np.minimum(best, rows[:, idx].astype(np.int64) @ weights)
    return rows[code == best]


def shape_edges(n: int, shape) -> list[tuple[int, int]]:
    return [(i // n, i % n) for i in range(n * n) for _ in range(int(shape[i]))]


def body_candidates(n: int, edges: list[tuple[int, int]]) -> list[int]:
    """Vertices that can ever lie inside a loop body (minus its pivot).

    A body vertex is reached in at least one step from a pivot lying on a
    cycle, so only these vertices' termination flags can matter (through LG3).
    """
    succ = [0] * n
    for s, t in edges:
        succ[s] |= 1 << t
    after = []  # vertices reachable in >= 1 step
    for v in range(n):
        seen, frontier = 0, succ[v]
        while frontier:
            seen |= frontier
            nxt = 0
            for w in _bits(frontier):
                nxt |= succ[w]
            frontier = nxt & ~seen
        after.append(seen)
    relevant = 0
    for v in range(n):
        if after[v] >> v & 1:
            relevant |= after[v]
    return list(_bits(relevant))


def _instances_of(n: int, shape) -> Iterator[tuple[list, IndexedGraph]]:
    edges = shape_edges(n, shape)
    base = IndexedGraph.from_arrays(n, edges, 0)
    pos = {int(name[1:]): k for k, name in enumerate(base.names)}
    rel = body_candidates(n, edges)
    for sel in range(1 << len(rel)):
        term = 0
        for j, v in enumerate(rel):
            if sel >> j & 1:
                term |= 1 << pos[v]
        yield edges, base.with_terminating(term)


def instances(n: int, max_transitions: int, max_multiplicity: int = 2) -> Iterator[tuple[list, IndexedGraph]]:
    """Every (shape, termination) instance of the family, as indexed graphs."""
    for shape in graph_shapes(n, max_transitions, max_multiplicity):
        yield from _instances_of(n, shape)


@dataclass(frozen=True)
class Disagreement:
    vertices: int
    edges: tuple[tuple[int, int], ...]
    terminating: tuple[str, ...]
    lee: bool
    llee: bool
    maximal_outcomes: tuple[bool, ...]
    greedy: bool


@dataclass
class AgreementCensus:
    """Counts for one exhaustive run; ``disagreements`` lists every failing instance."""

    max_vertices: int
    max_transitions: int
    max_multiplicity: int
    shapes: int = 0
    instances: int = 0
    with_lee: int = 0
    layered_dead_ends: int = 0
    disagreements: list[Disagreement] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.disagreements


def _census_chunk(n: int, shapes: np.ndarray) -> tuple[int, int, int, list[Disagreement]]:
    count = with_lee = dead_ends = 0
    bad = []
    for shape in shapes:
        for edges, ig in _instances_of(n, shape):
            count += 1
            lee = ig.search(layered=False) is not None
            llee = ig.search(layered=True) is not None
            outcomes = ig.maximal_outcomes(layered=False)
            _, greedy = ig.greedy(layered=False)
            with_lee += lee
            if llee and ig.maximal_outcomes(layered=True) != {True}:
                dead_ends += 1
            if lee != llee or outcomes != {lee} or greedy != lee:
                bad.append(
                    Disagreement(
                        n, tuple(edges), tuple(sorted(ig.graph.terminating)), lee, llee, tuple(sorted(outcomes)), greedy
                    )
                )
    return count, with_lee, dead_ends, bad


def lee_agreement_census(
    max_vertices: int = 5,
    max_transitions: int = 8,
    max_multiplicity: int = 2,
    workers: int | None = None,
) -> AgreementCensus:
    """Compare LEE, LLEE, greedy elimination and all maximal elimination sequences.

    An instance agrees when LEE and LLEE have the same answer and every
    maximal (unlayered) elimination sequence, greedy included, ends trace-finite
    exactly when LEE holds. ``layered_dead_ends`` counts LLEE graphs where some
    maximal layered sequence gets stuck; it is informational only.

    ``workers`` > 1 spreads shapes over that many processes (default: one per CPU).
    """
    census = AgreementCensus(max_vertices, max_transitions, max_multiplicity)
    workers = workers or os.cpu_count() or 1
    jobs = []
    for n in range(1, max_vertices + 1):
        shapes = graph_shapes(n, max_transitions, max_multiplicity)
        census.shapes += len(shapes)
        jobs += [(n, chunk) for chunk in np.array_split(shapes, max(1, min(len(shapes), 4 * workers)))]
    if workers > 1:
        with ProcessPoolExecutor(workers) as pool:
            results = list(pool.map(_census_chunk, *zip(*jobs)))
    else:
        results = [_census_chunk(n, chunk) for n, chunk in jobs]
    for count, with_lee, dead_ends, bad in results:
        census.instances += count
        census.with_lee += with_lee
        census.layered_dead_ends += dead_ends
        census.disagreements += bad
    return census
