"""Loop graphs, loop subgraph elimination, and the LEE / LLEE properties.

A loop graph has an infinite trace from its start, every infinite trace
returns to the start, and only the start may terminate. A loop subgraph of
``G`` is generated from a pivot ``v`` and a non-empty set ``T`` of
transitions leaving ``v``: it holds everything reachable from ``v`` through
``T`` until ``v`` is re-entered, and must itself be a loop graph. Eliminating
it deletes ``T`` and garbage-collects what became unreachable.

``G`` has LEE if some elimination sequence reaches a graph without infinite
traces, and LLEE if this is possible without ever removing a transition that
was a loop-body transition of an earlier step as an entry transition
(garbage collection of eliminated regions is allowed).

Internally a graph is indexed once (:class:`IndexedGraph`) and every
elimination state is a bitmask over its transitions.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterator

from .graph import ProcessGraph, Transition, garbage_collect, has_infinite_trace, sccs, to_json_obj

DEFAULT_MAX_OUT_DEGREE = 8


def _bits(mask: int) -> Iterator[int]:
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


@dataclass(frozen=True)
class RawCandidate:
    pivot: int
    entries: int
    body: int  # loop-body transitions
    body_vertices: int  # excluding the pivot


class IndexedGraph:
    """A process graph with integer vertices and transitions, for bitmask search."""

    def __init__(self, g: ProcessGraph):
        self.graph = g
        self.names = sorted(g.vertices)
        index = {v: i for i, v in enumerate(self.names)}
        self.transitions: list[Transition] = sorted(g.transitions)
        self.src = [index[s] for s, _, _ in self.transitions]
        self.tgt = [index[t] for _, _, t in self.transitions]
        self.out = [0] * len(self.names)
        for i, s in enumerate(self.src):
            self.out[s] |= 1 << i
        self.start = index[g.start]
        self.term = 0
        for v in g.terminating:
            self.term |= 1 << index[v]
        self.all = (1 << len(self.transitions)) - 1
        self.tmask = {t: 1 << i for i, t in enumerate(self.transitions)}
        # generated subgraphs do not depend on termination, so copies made by
        # with_terminating share this cache
        self._parts: dict[int, list] = {}
        self._gc: dict[int, int] = {}
        self._cyclic: dict[int, bool] = {}
        self._candidates: dict[tuple[int, int], list[RawCandidate]] = {}

    def with_terminating(self, term: int) -> IndexedGraph:
        """The same shape with another termination mask (bit i = vertex ``names[i]``)."""
        clone = object.__new__(IndexedGraph)
        clone.__dict__.update(self.__dict__)
        clone.term = term
        clone.graph = ProcessGraph(
            self.graph.vertices,
            self.graph.start,
            self.graph.transitions,
            frozenset(self.names[v] for v in _bits(term)),
        )
        clone._candidates = {}
        return clone

    @classmethod
    def from_arrays(cls, n: int, edges: list[tuple[int, int]], term: int, start: int = 0):
        """Build directly from ``(src, tgt)`` pairs; parallel edges get distinct labels."""
        seen: dict[tuple[int, int], int] = {}
        trans = []
        for s, t in edges:
            k = seen.get((s, t), 0)
            seen[(s, t)] = k + 1
            trans.append((f"v{s}", f"l{k}", f"v{t}"))
        g = ProcessGraph.build(
            f"v{start}",
            trans,
            [f"v{i}" for i in range(n) if term >> i & 1],
            vertices=[f"v{i}" for i in range(n)],
        )
        return cls(g)

    def mask_of(self, transitions) -> int:
        m = 0
        for t in transitions:
            m |= self.tmask[t]
        return m

    def transitions_of(self, mask: int) -> frozenset[Transition]:
        return frozenset(self.transitions[i] for i in _bits(mask))

    # -- basic analyses on a state ------------------------------------------------

    def reach(self, alive: int) -> int:
        seen = 1 << self.start
        stack = [self.start]
        while stack:
            v = stack.pop()
            for i in _bits(self.out[v] & alive):
                w = self.tgt[i]
                if not seen >> w & 1:
                    seen |= 1 << w
                    stack.append(w)
        return seen

    def gc(self, alive: int) -> int:
        hit = self._gc.get(alive)
        if hit is None:
            keep = 0
            for v in _bits(self.reach(alive)):
                keep |= self.out[v]
            hit = self._gc[alive] = alive & keep
        return hit

    def has_cycle(self, alive: int) -> bool:
        """Whether the transitions in ``alive`` contain a directed cycle."""
        hit = self._cyclic.get(alive)
        if hit is None:
            hit = self._cyclic[alive] = self._kahn_leftover(alive)
        return hit

    def _kahn_leftover(self, alive: int) -> bool:
        indeg: dict[int, int] = {}
        verts = set()
        for i in _bits(alive):
            verts.add(self.src[i])
            indeg[self.tgt[i]] = indeg.get(self.tgt[i], 0) + 1
        ready = [v for v in verts if indeg.get(v, 0) == 0]
        done = 0
        while ready:
            v = ready.pop()
            done += 1
            for i in _bits(self.out[v] & alive):
                w = self.tgt[i]
                indeg[w] -= 1
                if indeg[w] == 0 and w in verts:
                    ready.append(w)
        return done < len(verts)

    def has_infinite_trace(self, alive: int) -> bool:
        return self.has_cycle(self.gc(alive))

    # -- loop subgraphs -------------------------------------------------------------

    def generate(self, v: int, entries: int, alive: int) -> tuple[int, int, bool]:
        """Body transitions, body vertices, and whether ``v`` is re-entered."""
        body = 0
        verts = 0
        returns = False
        stack = []
        for i in _bits(entries):
            w = self.tgt[i]
            if w == v:
                returns = True
            elif not verts >> w & 1:
                verts |= 1 << w
                stack.append(w)
        while stack:
            u = stack.pop()
            for i in _bits(self.out[u] & alive):
                body |= 1 << i
                w = self.tgt[i]
                if w == v:
                    returns = True
                elif not verts >> w & 1:
                    verts |= 1 << w
                    stack.append(w)
        return body, verts, returns

    def body_is_loop(self, v: int, body: int, verts: int) -> str | None:
        """Which of LG2/LG3 fails for a generated subgraph (LG1 checked separately)."""
        if verts & self.term:
            return "LG3"
        if not self._acyclic_without(v, body):
            return "LG2"
        return None

    def _acyclic_without(self, v: int, body: int) -> bool:
        inner = 0
        for i in _bits(body):
            if self.tgt[i] != v:
                inner |= 1 << i
        return not self.has_cycle(inner)

    def _single_entries(self, alive: int) -> list:
        """Per live vertex: its live out-mask and the single entries passing LG2."""
        parts = self._parts.get(alive)
        if parts is None:
            parts = []
            for v in _bits(self.reach(alive)):
                outs = self.out[v] & alive
                if not outs:
                    continue
                good = []
                for i in _bits(outs):
                    body, verts, returns = self.generate(v, 1 << i, alive)
                    if self._acyclic_without(v, body):
                        good.append((1 << i, body, verts, returns))
                parts.append((v, outs, good))
            self._parts[alive] = parts
        return parts

    def candidates(self, alive: int, max_out_degree: int = DEFAULT_MAX_OUT_DEGREE) -> list[RawCandidate]:
        """All loop subgraphs of the state ``alive``.

        The generated subgraph of ``T`` is the union of those of its members, and
        LG2/LG3 hold for a union iff they hold for every part. So valid entry sets
        are exactly the subsets of the individually admissible transitions that
        contain at least one transition leading back to the pivot. Pivots with
        more than ``max_out_degree`` live transitions only offer the maximal set.
        """
        key = (alive, max_out_degree)
        if key in self._candidates:
            return self._candidates[key]
        result = []
        for v, outs, singles in self._single_entries(alive):
            good = [p for p in singles if not p[2] & self.term]
            if not any(r for *_, r in good):
                continue
            if bin(outs).count("1") > max_out_degree:
                choices = [good]
            else:
                choices = []
                k = len(good)
                for sel in range(1, 1 << k):
                    choices.append([good[j] for j in range(k) if sel >> j & 1])
            for parts in choices:
                if not any(r for *_, r in parts):
                    continue
                entries = body = verts = 0
                for e, b, vs, _ in parts:
                    entries |= e
                    body |= b
                    verts |= vs
                result.append(RawCandidate(v, entries, body, verts))
        # innermost pivots first (by the body of their largest loop), and at each
        # pivot the largest entry sets first
        widest: dict[int, int] = {}
        for c in result:
            widest[c.pivot] = max(widest.get(c.pivot, 0), bin(c.body).count("1"))
        result.sort(key=lambda c: (widest[c.pivot], c.pivot, -bin(c.entries).count("1"), c.entries))
        self._candidates[key] = result
        return result

    def apply(self, alive: int, c: RawCandidate) -> int:
        return self.gc(alive & ~c.entries)

    # -- searches -------------------------------------------------------------------

    def search(self, layered: bool, max_out_degree: int = DEFAULT_MAX_OUT_DEGREE) -> list[RawCandidate] | None:
        """Backtracking search for an elimination sequence to a trace-finite graph.

        Failed states are memoized on (live transitions, protected body transitions).
        """
        failed: set = set()

        def go(alive: int, protected: int) -> list[RawCandidate] | None:
            if not self.has_cycle(alive):
                return []
            key = (alive, protected) if layered else alive
            if key in failed:
                return None
            for c in self.candidates(alive, max_out_degree):
                if layered and c.entries & protected:
                    continue
                nxt = self.apply(alive, c)
                new_protected = (protected | c.body) & nxt if layered else 0
                rest = go(nxt, new_protected)
                if rest is not None:
                    return [c] + rest
            failed.add(key)
            return None

        return go(self.gc(self.all), 0)

    def greedy(self, layered: bool, max_out_degree: int = DEFAULT_MAX_OUT_DEGREE) -> tuple[list[RawCandidate], bool]:
        """Always take the first admissible candidate; report the sequence and success."""
        alive = self.gc(self.all)
        protected = 0
        steps = []
        while self.has_cycle(alive):
            for c in self.candidates(alive, max_out_degree):
                if layered and c.entries & protected:
                    continue
                nxt = self.apply(alive, c)
                protected = (protected | c.body) & nxt
                steps.append(c)
                alive = nxt
                break
            else:
                return steps, False
        return steps, True

    def maximal_outcomes(self, layered: bool, max_out_degree: int = DEFAULT_MAX_OUT_DEGREE) -> set[bool]:
        """Trace-finiteness of the end graphs of all maximal elimination sequences."""
        memo: dict = {}

        def go(alive: int, protected: int) -> frozenset[bool]:
            key = (alive, protected) if layered else alive
            if key in memo:
                return memo[key]
            out: set[bool] = set()
            moved = False
            for c in self.candidates(alive, max_out_degree):
                if layered and c.entries & protected:
                    continue
                nxt = self.apply(alive, c)
                moved = True
                out |= go(nxt, (protected | c.body) & nxt if layered else 0)
            if not moved:
                out.add(not self.has_cycle(alive))
            memo[key] = frozenset(out)
            return memo[key]

        return set(go(self.gc(self.all), 0))

    # -- conversion back to ProcessGraph ------------------------------------------

    def graph_of(self, alive: int) -> ProcessGraph:
        alive = self.gc(alive)
        live = self.reach(alive)
        names = frozenset(self.names[v] for v in _bits(live))
        return ProcessGraph(
            names,
            self.names[self.start],
            self.transitions_of(alive),
            self.graph.terminating & names,
        )

    def loop_candidate(self, c: RawCandidate, alive: int) -> LoopCandidate:
        entries = self.transitions_of(c.entries)
        body_trans = self.transitions_of(c.body)
        pivot = self.names[c.pivot]
        verts = frozenset(self.names[v] for v in _bits(c.body_vertices)) | {pivot}
        body = ProcessGraph(verts, pivot, entries | body_trans, self.graph.terminating & verts)
        return LoopCandidate(pivot, entries, body, body_trans)


# -- public API -------------------------------------------------------------------------


@dataclass(frozen=True)
class Violation:
    """Why a graph is not a loop graph.

    ``witness`` is ``None`` for LG1, a cycle (list of vertices avoiding the
    start) for LG2, and a terminating non-start vertex for LG3.
    """

    condition: str
    witness: object = None


@dataclass(frozen=True)
class LoopCandidate:
    pivot: str
    entries: frozenset[Transition]
    body: ProcessGraph
    body_transitions: frozenset[Transition]

    def to_json_obj(self) -> dict:
        return {
            "pivot": self.pivot,
            "entries": [list(t) for t in sorted(self.entries)],
            "body_transitions": [list(t) for t in sorted(self.body_transitions)],
        }


@dataclass(frozen=True)
class EliminationStep:
    host: ProcessGraph
    candidate: LoopCandidate


@dataclass(frozen=True)
class EliminationTrace:
    initial: ProcessGraph
    steps: tuple[EliminationStep, ...]
    final: ProcessGraph
    layered: bool = field(init=False)

    def __post_init__(self):
        object.__setattr__(self, "layered", _is_layered(self))

    @property
    def successful(self) -> bool:
        return not has_infinite_trace(self.final)

    def hosts(self) -> list[ProcessGraph]:
        return [s.host for s in self.steps] + [self.final]

    def to_json_obj(self) -> dict:
        return {
            "steps": [s.candidate.to_json_obj() for s in self.steps],
            "final": to_json_obj(self.final),
            "layered": self.layered,
        }


def _is_layered(trace: EliminationTrace) -> bool:
    # Garbage collection may drop earlier loop bodies; only entry removal counts.
    protected: set = set()
    for step in trace.steps:
        if step.candidate.entries & protected:
            return False
        protected |= step.candidate.body_transitions
    return True


def _find_cycle(g: ProcessGraph, avoid: str) -> list[str] | None:
    keep = g.vertices - {avoid}
    sub = ProcessGraph.build(
        min(keep) if keep else avoid,
        [t for t in g.transitions if t[0] in keep and t[2] in keep],
        vertices=keep,
    )
    for comp in sccs(sub):
        loops = [t for t in sub.transitions if t[0] in comp and t[2] in comp]
        if len(comp) == 1 and not loops:
            continue
        # walk inside the component from its least vertex back to itself
        first = min(comp)
        succ = {v: sorted(t for _, _, t in sub.out(v) if t in comp) for v in comp}
        parent = {first: None}
        queue = [first]
        while queue:
            u = queue.pop(0)
            for w in succ[u]:
                if w == first:
                    path = [u]
                    while parent[path[-1]] is not None:
                        path.append(parent[path[-1]])
                    return list(reversed(path))
                if w not in parent:
                    parent[w] = u
                    queue.append(w)
    return None


def check_loop_graph(g: ProcessGraph) -> Violation | None:
    """``None`` if ``g`` is a loop graph, otherwise the first violated condition."""
    g = garbage_collect(g)
    if not has_infinite_trace(g):
        return Violation("LG1")
    cycle = _find_cycle(g, g.start)
    if cycle is not None:
        return Violation("LG2", cycle)
    bad = sorted(g.terminating - {g.start})
    if bad:
        return Violation("LG3", bad[0])
    return None


def is_loop_graph(g: ProcessGraph) -> bool:
    return check_loop_graph(g) is None


def loop_candidates(g: ProcessGraph, max_out_degree: int = DEFAULT_MAX_OUT_DEGREE) -> list[LoopCandidate]:
    """Loop subgraphs of ``g`` with pivots in its reachable part."""
    ig = IndexedGraph(garbage_collect(g))
    return [ig.loop_candidate(c, ig.all) for c in ig.candidates(ig.all, max_out_degree)]


def generated_subgraph(g: ProcessGraph, pivot: str, entries) -> LoopCandidate:
    """The subgraph generated from ``pivot`` by ``entries`` (not checked to be a loop)."""
    g = garbage_collect(g)
    ig = IndexedGraph(g)
    v = ig.names.index(pivot)
    emask = ig.mask_of(entries)
    if emask & ~ig.out[v]:
        raise ValueError("entry transitions must leave the pivot")
    body, verts, _ = ig.generate(v, emask, ig.all)
    return ig.loop_candidate(RawCandidate(v, emask, body, verts), ig.all)


def eliminate(g: ProcessGraph, c: LoopCandidate) -> ProcessGraph:
    """Remove the entry transitions of loop subgraph ``c``, then garbage-collect."""
    g = garbage_collect(g)
    if c.pivot not in g.vertices or not c.entries or not c.entries <= g.transitions:
        raise ValueError("candidate does not belong to this graph")
    actual = generated_subgraph(g, c.pivot, c.entries)
    if actual.body != c.body or not is_loop_graph(actual.body):
        raise ValueError(f"entries at {c.pivot!r} do not generate a loop subgraph")
    return garbage_collect(g.without(c.entries))


def _trace(ig: IndexedGraph, steps: list[RawCandidate]) -> EliminationTrace:
    alive = ig.gc(ig.all)
    out = []
    for c in steps:
        out.append(EliminationStep(ig.graph_of(alive), ig.loop_candidate(c, alive)))
        alive = ig.apply(alive, c)
    return EliminationTrace(ig.graph_of(ig.gc(ig.all)), tuple(out), ig.graph_of(alive))


def decide_lee(g: ProcessGraph, max_out_degree: int = DEFAULT_MAX_OUT_DEGREE) -> EliminationTrace | None:
    """An elimination sequence ending in a graph without infinite traces, or ``None``."""
    ig = IndexedGraph(garbage_collect(g))
    steps = ig.search(layered=False, max_out_degree=max_out_degree)
    return None if steps is None else _trace(ig, steps)


def decide_llee(g: ProcessGraph, max_out_degree: int = DEFAULT_MAX_OUT_DEGREE) -> EliminationTrace | None:
    """Like :func:`decide_lee`, but the returned trace is layered."""
    ig = IndexedGraph(garbage_collect(g))
    steps = ig.search(layered=True, max_out_degree=max_out_degree)
    return None if steps is None else _trace(ig, steps)


def eliminate_greedily(g: ProcessGraph, layered: bool = False) -> EliminationTrace:
    """Run the first-candidate strategy to a dead end (check ``.successful``)."""
    ig = IndexedGraph(garbage_collect(g))
    steps, _ = ig.greedy(layered)
    return _trace(ig, steps)


def maximal_outcomes(g: ProcessGraph, layered: bool = False) -> set[bool]:
    """Outcomes (trace-finite or not) over all maximal elimination sequences."""
    return IndexedGraph(garbage_collect(g)).maximal_outcomes(layered)
