"""Exhaustive agreement of LEE and LLEE on small graphs.

Labels never matter to loop elimination, so graphs are enumerated as
multiplicity matrices up to vertex renaming. The full census over five
vertices takes several minutes on one core and four takes about two;
this script defaults to three.

    python walkthroughs/06_census.py [max_vertices]
"""

import sys
import time

from regproc.exhaustive import graph_shapes, lee_agreement_census

n = int(sys.argv[1]) if len(sys.argv) > 1 else 3
for k in range(1, n + 1):
    print(f"{k} vertices: {len(graph_shapes(k, 8))} label-free shapes")

start = time.time()
census = lee_agreement_census(max_vertices=n, max_transitions=8)
print(
    f"\n{census.instances} graphs checked in {time.time() - start:.0f} s: "
    f"{census.with_lee} with LEE, {len(census.disagreements)} disagreements, "
    f"{census.layered_dead_ends} layered dead ends"
)
