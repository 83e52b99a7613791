"""Charts: the process graph of a regular expression.

Each vertex is an expression reachable by transitions. A vertex terminates
when its expression can stop immediately.

    python walkthroughs/01_charts.py
"""

from regproc import chart, derivatives, parse, render, terminates, to_dot
from regproc.regex import classify

e = parse("(a . b)* . c")
print("expression:", render(e))
print("fragment:", vars(classify(e)))

# one step: every (letter, target) pair derivable for e
for d in derivatives(e):
    print(f"  {render(e)} --{d.label}--> {render(d.target)}")

g = chart(e)
print(f"\nchart: {len(g.vertices)} vertices, {len(g.transitions)} transitions, start {g.start!r}")
for s, a, t in sorted(g.transitions):
    print(f"  {s} --{a}--> {t}")
print("terminating:", sorted(g.terminating))
assert all(terminates(parse(v)) == (v in g.terminating) for v in g.vertices)

# the binary star iterates its body and then exits through its second argument
h = chart(parse("star2(a, b)"))
print("\nstar2(a, b):", sorted(h.transitions))

print("\nGraphviz rendering of the first chart:\n")
print(to_dot(g))
