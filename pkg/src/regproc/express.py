"""Expressibility for the under-star-1-free fragment, and expression extraction.

A finite process graph is bisimilar to the chart of some under-star-1-free
expression iff its bisimulation collapse has LLEE. Extraction reads an
expression off a graph with a layered elimination trace.
"""

from __future__ import annotations

from dataclasses import dataclass

from .bisim import bisimilar, collapse
from .chart import chart
from .graph import ProcessGraph, Transition, garbage_collect, to_json_obj
from .lee import EliminationTrace, decide_llee
from .regex import ONE, Atom, Prod, RegExp, Star, classify, render, sum_of


class ExtractionError(ValueError):
    pass


def _prefix(label: str, cont: RegExp) -> RegExp:
    # a . 1 and a have bisimilar charts; keep the shorter form
    return Atom(label) if cont == ONE else Prod(Atom(label), cont)


def extract(g: ProcessGraph, trace: EliminationTrace) -> RegExp:
    """An expression whose chart is bisimilar to ``g``.

    ``trace`` must be a successful layered elimination trace of ``g`` (as
    returned by :func:`decide_llee`). Entry transitions of its steps become
    iterations; every other transition is a plain prefix. A vertex ``v`` is
    rendered as ``(sum of its loop entries)* . (sum of its exits [+ 1])``,
    and inside a loop at ``v`` each body vertex is described up to the point
    where control is back at ``v``.
    """
    g = garbage_collect(g)
    if trace.initial != g:
        raise ExtractionError("trace does not start from this graph")
    if not trace.layered:
        raise ExtractionError("trace is not layered")
    if not trace.successful:
        raise ExtractionError("trace does not end in a graph without infinite traces")

    entries: set[Transition] = set()
    for step in trace.steps:
        entries |= step.candidate.entries
    succ = g.successors()

    def split(v):
        ins = sorted((t for t in succ[v] if t in entries), key=lambda t: (t[1], t[2]))
        outs = sorted((t for t in succ[v] if t not in entries), key=lambda t: (t[1], t[2]))
        return ins, outs

    solo: dict[str, RegExp] = {}
    rel: dict[tuple[str, str], RegExp] = {}
    active: set = set()

    def loops(v: str, ins) -> RegExp:
        return Star(sum_of([_prefix(a, within(w, v)) for _, a, w in ins]))

    def within(u: str, v: str) -> RegExp:
        # behaviour of u, inside a loop at v, until control returns to v
        if u == v:
            return ONE
        key = (u, v)
        if key in rel:
            return rel[key]
        if key in active:
            raise ExtractionError(f"cyclic loop structure at {u!r} relative to {v!r}")
        if u in g.terminating:
            raise ExtractionError(f"terminating vertex {u!r} inside a loop at {v!r}")
        active.add(key)
        ins, outs = split(u)
        rest = sum_of([_prefix(a, within(w, v)) for _, a, w in outs])
        rel[key] = Prod(loops(u, ins), rest) if ins else rest
        active.discard(key)
        return rel[key]

    def alone(v: str) -> RegExp:
        if v in solo:
            return solo[v]
        if v in active:
            raise ExtractionError(f"cycle of non-entry transitions through {v!r}")
        active.add(v)
        ins, outs = split(v)
        terms = [_prefix(a, alone(w)) for _, a, w in outs]
        if v in g.terminating:
            terms.append(ONE)
        rest = sum_of(terms)
        solo[v] = Prod(loops(v, ins), rest) if ins else rest
        active.discard(v)
        return solo[v]

    return alone(g.start)


@dataclass(frozen=True)
class ExpressibilityVerdict:
    expressible: bool
    witness: RegExp | None
    collapse_used: ProcessGraph
    llee_trace: EliminationTrace | None

    def __bool__(self):
        return self.expressible

    def to_json_obj(self) -> dict:
        doc = {
            "expressible": self.expressible,
            "witness": None if self.witness is None else render(self.witness),
            "collapse": to_json_obj(self.collapse_used),
        }
        if self.witness is not None:
            doc["witness_fragment"] = vars(classify(self.witness))
        if self.llee_trace is not None:
            doc["llee_trace"] = self.llee_trace.to_json_obj()
        return doc


def decide_expressible_us1f(g: ProcessGraph) -> ExpressibilityVerdict:
    """Whether ``g`` is bisimilar to the chart of an under-star-1-free expression.

    Decided by LLEE of the collapse; a positive verdict carries a witness
    expression whose chart has been checked bisimilar to the collapse.
    """
    g0, _ = collapse(garbage_collect(g))
    trace = decide_llee(g0)
    if trace is None:
        return ExpressibilityVerdict(False, None, g0, None)
    witness = extract(g0, trace)
    if not bisimilar(chart(witness), g0):
        raise RuntimeError(f"extracted witness {render(witness)!r} is not bisimilar to the collapse")
    return ExpressibilityVerdict(True, witness, g0, trace)
