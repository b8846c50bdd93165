"""
Carving dense pieces out of a dense host
========================================

Prune high-degree vertices, then repeatedly take a small dense subgraph.
The ledger shows which size and density bounds held in each round.
"""
from fractions import Fraction

from minorforge import generators as gen
from minorforge.density import extract_pieces, extraction_constants

g = gen.gnp(40, 0.6, seed=8)
D = g.min_degree()
eps = Fraction(1, 20)
out = extract_pieces(g, D, K=3, eps=eps)
print("outcome:", out.tag, "| pieces:", [len(p) for p in out.pieces])
for row in out.ledger:
    print({k: (str(v) if isinstance(v, Fraction) else v) for k, v in row.items()})

# the constants behind the loop; at these sizes the guarantees are vacuous
c = extraction_constants(3, eps, Fraction(1, 5))
print("C =", c["C"], "eps' =", c["eps_prime"])
