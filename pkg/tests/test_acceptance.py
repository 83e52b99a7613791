"""Acceptance criteria 1-9, one test each, with a PASS/FAIL line per criterion.

Lines are collected in ``RESULTS`` and printed in the pytest terminal summary
(see conftest.py); running this file directly prints them as well.
"""

from __future__ import annotations

import itertools
import random
import time

import numpy as np
import pytest
from oracles import matches, naive_bisimilar, naive_bisimilarity

from regproc.bisim import accepts, bisimilar, collapse, isomorphic, lang_equiv, refine
from regproc.chart import EXPRESSION_FIXTURES, chart
from regproc.exhaustive import lee_agreement_census
from regproc.express import decide_expressible_us1f, extract
from regproc.graph import ProcessGraph, load_fixture
from regproc.lee import decide_lee, decide_llee
from regproc.mil import AXIOMS, ProofError, axiom_metavariables, check_proof, instantiate_axiom, load_script_fixture
from regproc.regex import Sum, classify, parse, render, size, word
from regproc.sampling import random_graph, random_regex, random_word

RESULTS: dict[int, str] = {}


def record(n: int, passed: bool, detail: str) -> None:
    RESULTS[n] = f"criterion {n}: {'PASS' if passed else 'FAIL'}  {detail}"
    print(RESULTS[n])


def ch(text: str):
    return chart(parse(text))


def test_criterion_1_right_distributivity_separation():
    left, right = ch("a . (b + c)"), ch("a . b + a . c")
    same_language = lang_equiv(left, right)
    same_process = bool(bisimilar(left, right))
    ok = same_language is True and same_process is False
    record(1, ok, f"lang_equiv={same_language} bisimilar={same_process}")
    assert ok


def test_criterion_2_procsemeq():
    g1 = ch(EXPRESSION_FIXTURES["procsemeq1"])
    g2 = ch(EXPRESSION_FIXTURES["procsemeq2"])
    witness = ch(EXPRESSION_FIXTURES["procsemeq0"])
    c1, c2 = collapse(g1)[0], collapse(g2)[0]
    checks = {
        "bisimilar": bool(bisimilar(g1, g2)),
        "collapses isomorphic": isomorphic(c1, c2),
        "collapse ~ witness": bool(bisimilar(c1, witness)),
        "collapse has 3 vertices": len(c1.vertices) == 3,
    }
    ok = all(checks.values())
    record(2, ok, f"{checks}; chart sizes {len(g1.vertices)}, {len(g2.vertices)}")
    assert ok


def test_criterion_3_non_expressible_fixtures():
    checks = {}
    for name in ("g1ne", "g2ne"):
        g = load_fixture(name)
        checks[f"{name} NoLEE"] = decide_lee(g) is None
        checks[f"{name} NoLLEE"] = decide_llee(g) is None
        checks[f"{name} not expressible"] = not decide_expressible_us1f(g).expressible
    ok = all(checks.values())
    record(3, ok, str(checks))
    assert ok


def test_criterion_4_one_free_round_trip():
    rng = random.Random(2024)
    failures = []
    for _ in range(500):
        e = random_regex(rng, 20, fragment="one_free")
        assert classify(e).is_one_free and size(e) <= 20
        g = chart(e)
        trace = decide_llee(g)
        g0 = collapse(g)[0]
        verdict = decide_expressible_us1f(g)
        fine = (
            trace is not None
            and decide_llee(g0) is not None
            and bool(bisimilar(chart(extract(g, trace)), g))
            and verdict.expressible
            and bool(bisimilar(chart(verdict.witness), g))
        )
        if not fine:
            failures.append(render(e))
    record(4, not failures, f"500 random 1-free expressions, {len(failures)} failures {failures[:3]}")
    assert not failures


def test_criterion_5_lee_llee_exhaustive():
    start = time.time()
    census = lee_agreement_census(max_vertices=5, max_transitions=8, max_multiplicity=2)
    took = time.time() - start
    detail = (
        f"{census.instances} graphs ({census.shapes} label-free shapes, <=5 vertices, <=8 transitions, "
        f"<=2 labels, all relevant termination sets), {census.with_lee} with LEE, "
        f"{len(census.disagreements)} disagreements, {took:.0f} s"
    )
    if took > 60:
        detail += " (over the 60 s per-item budget on this machine; agreement itself is complete)"
    if census.disagreements:
        detail += "; first: " + repr(census.disagreements[0])
    record(5, census.ok, detail)
    assert census.ok, census.disagreements[:20]


def test_criterion_6_mil_soundness():
    rng = random.Random(6)
    unsound = []
    for _ in range(200):
        name = rng.choice(sorted(AXIOMS))
        binding = {m: random_regex(rng, 6, ("a", "b"), "star_only") for m in axiom_metavariables(name)}
        inst = instantiate_axiom(name, binding)
        if not bisimilar(chart(inst.lhs), chart(inst.rhs)):
            unsound.append((name, str(inst)))
    final = check_proof(load_script_fixture("rspstar_astarb"))
    final_ok = bool(bisimilar(chart(final.lhs), chart(final.rhs)))
    try:
        check_proof(load_script_fixture("rspstar_sidecond"))
        rejected, reason = False, None
    except ProofError as exc:
        rejected, reason = "side condition" in exc.reason, exc.reason
    ok = not unsound and final_ok and rejected
    record(6, ok, f"200 axiom instances, {len(unsound)} unsound; a*.b script ok, sides bisimilar={final_ok}; side-condition script rejected={rejected} ({reason})")
    assert ok


def _graph_classes(n: int, labels: int):
    """All graphs on n vertices (any start) up to vertex and label permutations."""
    slots = [(s, a, t) for s in range(n) for a in range(labels) for t in range(n)]
    where = {slot: i for i, slot in enumerate(slots)}
    k = len(slots)
    codes = np.arange(1 << (k + n), dtype=np.int64)
    best = codes.copy()
    for perm in itertools.permutations(range(n)):
        for lab in itertools.permutations(range(labels)):
            img = np.zeros_like(codes)
            for i, (s, a, t) in enumerate(slots):
                img |= ((codes >> i) & 1) << where[(perm[s], lab[a], perm[t])]
            for v in range(n):
                img |= ((codes >> (k + v)) & 1) << (k + perm[v])
            best = np.minimum(best, img)
    names = [f"v{i}" for i in range(n)]
    for c in codes[codes == best].tolist():
        trans = [(names[s], "ab"[a], names[t]) for i, (s, a, t) in enumerate(slots) if c >> i & 1]
        term = [names[v] for v in range(n) if c >> (k + v) & 1]
        yield ProcessGraph.build(names[0], trans, term, names)


def _partition_matches_fixpoint(g: ProcessGraph) -> bool:
    names = sorted(g.vertices)
    succ = {v: [(a, t) for s, a, t in g.transitions if s == v] for v in names}
    blocks, _ = refine(names, succ, set(g.terminating))
    return {(u, v) for u in names for v in names if blocks[u] == blocks[v]} == naive_bisimilarity(g, g)


FULL_SCOPE_7 = (
    "all graphs with <=4 vertices and <=2 labels means 2^32 transition sets x 16 termination sets "
    "on 4 vertices (about 10^10 even up to symmetry), far beyond desk scale"
)


def test_criterion_7_bisimulation_oracle_reduced_scope():
    # exhaustive where feasible: <=3 vertices with 2 labels, 4 vertices with 1 label;
    # every vertex pair of every graph is compared, which covers all rooted pairs
    counts = {}
    mismatches = 0
    for n, labels in [(1, 2), (2, 2), (3, 2), (4, 1)]:
        graphs = list(_graph_classes(n, labels))
        counts[(n, labels)] = len(graphs)
        mismatches += sum(not _partition_matches_fixpoint(g) for g in graphs)
    # plus random rooted pairs with 4 vertices and 2 labels through the public API
    rng = random.Random(7)
    sampled = 3000
    for _ in range(sampled):
        g = random_graph(rng, 4, rng.randint(0, 12))
        h = random_graph(rng, 4, rng.randint(0, 12))
        mismatches += bool(bisimilar(g, h)) != naive_bisimilar(g, h)
        mismatches += not _partition_matches_fixpoint(g)
    covered = ", ".join(f"{n}v/{lab}l: {c} classes" for (n, lab), c in counts.items())
    passed = mismatches == 0
    RESULTS[7] = (
        f"criterion 7: FAIL  full scope not attained ({FULL_SCOPE_7}); "
        f"reduced scope {'passed' if passed else 'FAILED'}: {covered}, {sampled} random 4v/2l pairs, {mismatches} mismatches"
    )
    print(RESULTS[7])
    assert passed


@pytest.mark.xfail(run=False, strict=True, reason=FULL_SCOPE_7)
def test_criterion_7_full_scope():
    raise AssertionError("not run")


def test_criterion_8_vertex_bound():
    rng = random.Random(8)
    violations, occurrences = [], []
    while len(occurrences) < 1000:
        # a large budget with rare early leaves spreads samples over 0..30 occurrences
        e = random_regex(rng, 200, stop=0.02)
        occ = classify(e).letter_occurrences
        if occ > 30:
            continue
        occurrences.append(occ)
        n = len(chart(e).vertices)
        if n > occ + 1:
            violations.append((render(e), n, occ))
    record(
        8,
        not violations,
        f"1000 random expressions (letter occurrences {min(occurrences)}..{max(occurrences)}), "
        f"{len(violations)} violations {violations[:3]}",
    )
    assert not violations


def test_criterion_9_language_oracle():
    rng = random.Random(9)
    bad = []
    for _ in range(1000):
        e = random_regex(rng, 14, ("a", "b"))
        w = random_word(rng, ("a", "b"), 8)
        member = matches(e, w)
        # L(e + w) = L(e) exactly when w is already in L(e)
        via_equivalence = lang_equiv(chart(e), chart(Sum(e, word(w))))
        if via_equivalence != member or accepts(chart(e), w) != member:
            bad.append((render(e), w))
    record(9, not bad, f"1000 (expression, word) pairs, words up to length 8, {len(bad)} disagreements {bad[:3]}")
    assert not bad


if __name__ == "__main__":
    import sys

    sys.exit(pytest.main([__file__, "-q"]))
