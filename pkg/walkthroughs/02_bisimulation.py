"""Bisimilarity, collapse, and why it is finer than language equivalence.

    python walkthroughs/02_bisimulation.py
"""

from regproc import EXPRESSION_FIXTURES, bisimilar, chart, collapse, distinguishing_word, isomorphic, lang_equiv, parse

# a.(b + c) and a.b + a.c accept the same words, but only the first
# keeps the choice between b and c open after reading a
left, right = chart(parse("a . (b + c)")), chart(parse("a . b + a . c"))
print("same language:", lang_equiv(left, right))
verdict = bisimilar(left, right)
print("bisimilar:", bool(verdict), "| separated vertices:", getattr(verdict, "witness", None))

# two different expressions denoting the same process
g1 = chart(parse(EXPRESSION_FIXTURES["procsemeq1"]))
g2 = chart(parse(EXPRESSION_FIXTURES["procsemeq2"]))
rel = bisimilar(g1, g2)
print(f"\n{EXPRESSION_FIXTURES['procsemeq1']}  ~  {EXPRESSION_FIXTURES['procsemeq2']}: {bool(rel)}")
print("largest bisimulation:", sorted(rel.pairs))

c1, proj = collapse(g1)
c2, _ = collapse(g2)
print(f"\ncollapse of the first chart: {len(g1.vertices)} -> {len(c1.vertices)} vertices")
for v, block in sorted(proj.items()):
    print(f"  {v}  ->  {block}")
print("collapses isomorphic:", isomorphic(c1, c2))

# language differences come with a shortest witness word
w = distinguishing_word(chart(parse("a*")), chart(parse("a . a*")))
print("\nshortest word telling a* from a . a*:", " ".join(w) or "(the empty word)")
