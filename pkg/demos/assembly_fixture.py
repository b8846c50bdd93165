"""
Assembling a minor from pieces
==============================

Two K4 hosts joined by a perfect matching. Each host carries one edge of
the pattern; a cross edge between the pieces is routed along a linkage.
"""
from minorforge import build_graph, verify_model
from minorforge.assembly import assemble_minor_from_pieces
from minorforge.errors import DensityPreconditionFailed

k4 = [(a, b) for a in range(4) for b in range(a + 1, 4)]
two_k4 = k4 + [(a + 4, b + 4) for a, b in k4]
G = build_graph(8, two_k4 + [(i, i + 4) for i in range(4)])
h = build_graph(4, [(0, 1), (2, 3), (1, 2)])

res = assemble_minor_from_pieces(h, [(1, 2)], [[0, 1], [2, 3]], G, [[0, 1, 2, 3], [4, 5, 6, 7]])
print("branch sets:", {v: sorted(s) for v, s in res.model.branch_sets.items()})
print("verified:", bool(verify_model(res.model)), "| routed cross edge:", res.trace["Q"])

# with a single joining edge the hosts can be cut apart by one vertex
weak = build_graph(8, two_k4 + [(0, 4)])
try:
    assemble_minor_from_pieces(h, [(1, 2)], [[0, 1], [2, 3]], weak, [[0, 1, 2, 3], [4, 5, 6, 7]])
except DensityPreconditionFailed as exc:
    print("rejected:", exc, "| witness:", exc.separation.to_dict())
