"""Finite rooted process graphs (labeled transition systems with termination)."""

from __future__ import annotations

import json
from collections import deque
from dataclasses import dataclass
from importlib import resources
from typing import Iterable

Transition = tuple[str, str, str]


class GraphFormatError(ValueError):
    def __init__(self, path: str, message: str):
        super().__init__(f"{path}: {message}")
        self.path = path


@dataclass(frozen=True)
class ProcessGraph:
    """A process graph with opaque string vertex ids.

    ``terminating`` is the set of vertices that permit immediate successful
    termination. Transitions are ``(source, label, target)`` triples.
    """

    vertices: frozenset[str]
    start: str
    transitions: frozenset[Transition]
    terminating: frozenset[str]

    def __post_init__(self):
        if self.start not in self.vertices:
            raise ValueError(f"start vertex {self.start!r} is not a vertex")
        for src, _, tgt in self.transitions:
            if src not in self.vertices or tgt not in self.vertices:
                raise ValueError(f"transition ({src!r}, {tgt!r}) leaves the vertex set")
        if not self.terminating <= self.vertices:
            raise ValueError("terminating vertices must be vertices")

    @classmethod
    def build(
        cls,
        start: str,
        transitions: Iterable[Transition] = (),
        terminating: Iterable[str] = (),
        vertices: Iterable[str] = (),
    ) -> ProcessGraph:
        """Construct a graph, adding endpoints of transitions as vertices."""
        transitions = frozenset((str(s), str(a), str(t)) for s, a, t in transitions)
        terminating = frozenset(terminating)
        vs = set(vertices) | {start} | terminating
        for s, _, t in transitions:
            vs.add(s)
            vs.add(t)
        return cls(frozenset(vs), start, transitions, terminating)

    def out(self, v: str) -> list[Transition]:
        return sorted(t for t in self.transitions if t[0] == v)

    def successors(self) -> dict[str, list[Transition]]:
        succ: dict[str, list[Transition]] = {v: [] for v in self.vertices}
        for t in sorted(self.transitions):
            succ[t[0]].append(t)
        return succ

    def labels(self) -> frozenset[str]:
        return frozenset(a for _, a, _ in self.transitions)

    def restrict(self, keep: Iterable[str]) -> ProcessGraph:
        keep = frozenset(keep) | {self.start}
        return ProcessGraph(
            keep,
            self.start,
            frozenset(t for t in self.transitions if t[0] in keep and t[2] in keep),
            self.terminating & keep,
        )

    def without(self, removed: Iterable[Transition]) -> ProcessGraph:
        return ProcessGraph(
            self.vertices, self.start, self.transitions - frozenset(removed), self.terminating
        )


def reachable(g: ProcessGraph) -> frozenset[str]:
    succ = g.successors()
    seen = {g.start}
    queue = deque([g.start])
    while queue:
        v = queue.popleft()
        for _, _, w in succ[v]:
            if w not in seen:
                seen.add(w)
                queue.append(w)
    return frozenset(seen)


def garbage_collect(g: ProcessGraph) -> ProcessGraph:
    keep = reachable(g)
    if keep == g.vertices:
        return g
    return g.restrict(keep)


def sccs(g: ProcessGraph) -> list[frozenset[str]]:
    """Strongly connected components over the whole vertex set (Tarjan).

    Components come out in reverse topological order of the condensation.
    """
    succ = {v: [t for _, _, t in ts] for v, ts in g.successors().items()}
    index: dict[str, int] = {}
    low: dict[str, int] = {}
    on_stack: set[str] = set()
    stack: list[str] = []
    result: list[frozenset[str]] = []
    counter = 0

    for root in sorted(g.vertices):
        if root in index:
            continue
        # iterative DFS; frames are (vertex, iterator position)
        work = [(root, 0)]
        while work:
            v, i = work.pop()
            if i == 0:
                index[v] = low[v] = counter
                counter += 1
                stack.append(v)
                on_stack.add(v)
            recurse = False
            children = succ[v]
            while i < len(children):
                w = children[i]
                i += 1
                if w not in index:
                    work.append((v, i))
                    work.append((w, 0))
                    recurse = True
                    break
                if w in on_stack:
                    low[v] = min(low[v], index[w])
            if recurse:
                continue
            if low[v] == index[v]:
                comp = set()
                while True:
                    w = stack.pop()
                    on_stack.discard(w)
                    comp.add(w)
                    if w == v:
                        break
                result.append(frozenset(comp))
            if work:
                parent = work[-1][0]
                low[parent] = min(low[parent], low[v])
    return result


def cyclic_vertices(g: ProcessGraph) -> frozenset[str]:
    """Vertices that lie on some directed cycle."""
    self_loops = {s for s, _, t in g.transitions if s == t}
    found = set(self_loops)
    for comp in sccs(g):
        if len(comp) > 1:
            found |= comp
    return frozenset(found)


def has_infinite_trace(g: ProcessGraph) -> bool:
    return bool(cyclic_vertices(g) & reachable(g))


# -- serialization ------------------------------------------------------------


def to_json_obj(g: ProcessGraph) -> dict:
    return {
        "vertices": sorted(g.vertices),
        "start": g.start,
        "transitions": [list(t) for t in sorted(g.transitions)],
        "terminating": sorted(g.terminating),
    }


def from_json_obj(doc) -> ProcessGraph:
    if not isinstance(doc, dict):
        raise GraphFormatError("$", "expected an object")
    for key in ("vertices", "start", "transitions", "terminating"):
        if key not in doc:
            raise GraphFormatError(f"$.{key}", "missing field")
    extra = set(doc) - {"vertices", "start", "transitions", "terminating"}
    if extra:
        raise GraphFormatError(f"$.{sorted(extra)[0]}", "unknown field")

    def strings(key):
        value = doc[key]
        if not isinstance(value, list):
            raise GraphFormatError(f"$.{key}", "expected an array")
        for i, item in enumerate(value):
            if not isinstance(item, str):
                raise GraphFormatError(f"$.{key}[{i}]", "expected a string")
        return value

    vertices = strings("vertices")
    terminating = strings("terminating")
    start = doc["start"]
    if not isinstance(start, str):
        raise GraphFormatError("$.start", "expected a string")
    if not isinstance(doc["transitions"], list):
        raise GraphFormatError("$.transitions", "expected an array")
    transitions = []
    vset = set(vertices)
    for i, t in enumerate(doc["transitions"]):
        path = f"$.transitions[{i}]"
        if not (isinstance(t, list) and len(t) == 3 and all(isinstance(x, str) for x in t)):
            raise GraphFormatError(path, "expected [source, label, target]")
        for j in (0, 2):
            if t[j] not in vset:
                raise GraphFormatError(f"{path}[{j}]", f"unknown vertex {t[j]!r}")
        transitions.append(tuple(t))
    if start not in vset:
        raise GraphFormatError("$.start", f"unknown vertex {start!r}")
    for i, v in enumerate(terminating):
        if v not in vset:
            raise GraphFormatError(f"$.terminating[{i}]", f"unknown vertex {v!r}")
    return ProcessGraph(frozenset(vertices), start, frozenset(transitions), frozenset(terminating))


def load(text: bytes | str) -> ProcessGraph:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise GraphFormatError("$", f"invalid JSON: {exc.msg}") from exc
    return from_json_obj(doc)


def store(g: ProcessGraph) -> bytes:
    return json.dumps(to_json_obj(g), indent=None, separators=(", ", ": ")).encode()


def _dot_quote(s: str) -> str:
    return '"' + s.replace("\\", "\\\\").replace('"', '\\"') + '"'


def to_dot(g: ProcessGraph, name: str = "G", highlight: Iterable[Transition] = ()) -> str:
    """Graphviz rendering: an arrow from an invisible point marks the start,
    terminating vertices get a double ring."""
    highlight = set(highlight)
    lines = [f"digraph {_dot_quote(name)} {{", "  rankdir=TB;", "  __start [shape=point, style=invis];"]
    for v in sorted(g.vertices):
        shape = "doublecircle" if v in g.terminating else "circle"
        lines.append(f"  {_dot_quote(v)} [shape={shape}];")
    lines.append(f"  __start -> {_dot_quote(g.start)} [color=chocolate];")
    for s, a, t in sorted(g.transitions):
        style = ", penwidth=2.5" if (s, a, t) in highlight else ""
        lines.append(f"  {_dot_quote(s)} -> {_dot_quote(t)} [label={_dot_quote(a)}{style}];")
    lines.append("}")
    return "\n".join(lines) + "\n"


# -- fixtures -----------------------------------------------------------------

GRAPH_FIXTURES = ("g1ne", "g2ne", "lee3")


def fixture_text(name: str) -> str:
    """Raw JSON text of a bundled graph fixture."""
    if name not in GRAPH_FIXTURES:
        raise KeyError(f"unknown graph fixture {name!r}")
    return resources.files("regproc.data").joinpath(f"{name}.json").read_text()


def load_fixture(name: str) -> ProcessGraph:
    """Load a bundled graph fixture by name (``g1ne``, ``g2ne``, ``lee3``)."""
    return load(fixture_text(name))
