"""
Graphs with large minimum degree and no given minor
===================================================

Each family comes with exact integer bounds and a minor check by both
oracles.
"""
import warnings

from minorforge import generators as gen
from minorforge.constructions import (
    bipartite_expand,
    certify_no_minor,
    construct_kst_blocker,
    construct_sk7_blocker,
    construct_sktt_blocker,
)
from minorforge.io import dumps

# K_{3,3,3}: every vertex has degree 6, yet no K7 minor
k333 = construct_sk7_blocker(1)
cert = certify_no_minor(k333, [gen.complete(7), gen.complete(6)])
print(dumps(cert["minor_checks"]))

# friendship graph F3: all cycles are triangles, so no K_{2,2} minor
f3 = construct_sktt_blocker(1, 2, 3)
print("F3:", f3.n, "vertices,", f3.e, "edges")
print(dumps(certify_no_minor(f3, [gen.complete_bipartite(2, 2)])["minor_checks"]))

# complements of sparse high-girth graphs; small parameters trigger a warning
with warnings.catch_warnings(record=True) as caught:
    warnings.simplefilter("always")
    prism = construct_kst_blocker(1, 6)
print("K_{1,6} blocker:", prism, "| warning:", caught[0].message if caught else None)
g = construct_kst_blocker(2, 8)
print("K_{2,8} blocker:", g, "min degree", g.min_degree())
print(dumps(certify_no_minor(g, [gen.complete_bipartite(2, 8)])["minor_checks"]))

# a bounded-degree bipartite graph with the Petersen graph as a minor
r = bipartite_expand(gen.petersen(), 3)
print("Petersen expanded:", r.graph, "max degree", r.graph.max_degree())
