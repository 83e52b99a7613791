"""Reading an expression back off a graph with a layered elimination trace.

    python walkthroughs/04_expressibility.py
"""

import random

from regproc import bisimilar, chart, decide_expressible_us1f, decide_llee, extract, load_fixture, render
from regproc.regex import classify
from regproc.sampling import random_regex

g = load_fixture("lee3")
trace = decide_llee(g)
e = extract(g, trace)
print("extracted from lee3:", render(e))
print("chart of it is bisimilar to lee3:", bool(bisimilar(chart(e), g)))

# the decision procedure works on the collapse and checks its own witness
for name in ("lee3", "g1ne", "g2ne"):
    v = decide_expressible_us1f(load_fixture(name))
    witness = render(v.witness) if v.witness is not None else "-"
    print(f"{name}: expressible={v.expressible} (collapse has {len(v.collapse_used.vertices)} vertices) witness={witness}")

# round trip: expression -> chart -> expression, for 1-free expressions
rng = random.Random(1)
print("\nround trips:")
shown = 0
while shown < 4:
    e = random_regex(rng, 14, fragment="one_free")
    if not classify(e).uses_bin_star:
        continue
    shown += 1
    v = decide_expressible_us1f(chart(e))
    print(f"  {render(e)}\n    -> {render(v.witness)}  (1-free input: {classify(e).is_one_free})")
