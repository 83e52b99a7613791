"""Loop existence and elimination (LEE) and its layered variant (LLEE).

A loop subgraph is generated from a vertex by some of its outgoing
transitions; eliminating it removes those entries and garbage-collects.
A graph has LEE when repeated elimination leaves no infinite path.

    python walkthroughs/03_loop_elimination.py
"""

from regproc import (
    check_loop_graph,
    decide_lee,
    decide_llee,
    load_fixture,
    loop_candidates,
    maximal_outcomes,
)

g = load_fixture("lee3")
print(f"lee3: {len(g.vertices)} vertices, {len(g.transitions)} transitions")
for c in loop_candidates(g):
    print(f"  loop at {c.pivot} entered by {sorted(c.entries)}")

trace = decide_llee(g)
print(f"\nLLEE holds, {len(trace.steps)} elimination steps, layered={trace.layered}")
for i, step in enumerate(trace.steps, 1):
    print(f"  step {i}: pivot {step.candidate.pivot}, entries {sorted(step.candidate.entries)}")
print("final graph transitions:", sorted(trace.final.transitions))

# a loop body must be a loop graph; the violation names the failed condition
body = trace.steps[0].candidate.body
print("\nfirst body is a loop graph:", check_loop_graph(body) is None)

# the two non-expressible graphs: elimination always gets stuck
for name in ("g1ne", "g2ne"):
    h = load_fixture(name)
    print(f"\n{name}: LEE={decide_lee(h) is not None}, LLEE={decide_llee(h) is not None}")
    print("  candidates:", [c.pivot for c in loop_candidates(h)] or "none")
    print("  every maximal elimination ends with LEE:", maximal_outcomes(h))
