"""
Searching for graphs of high minimum degree without a minor
===========================================================

If every vertex has degree at least v(H) - 1, must H be a minor? Trees and
small cliques say yes; K7 says no.
"""
from minorforge import generators as gen
from minorforge.constructions import ha_falsify
from minorforge.io import to_graph6

for h in (gen.path(3), gen.complete(4)):
    print(h.label, "up to 8 vertices:", ha_falsify(h, 8))

# the smallest witnesses found by exhaustive search
for t in (5, 6, 7):
    g = ha_falsify(gen.complete(t), 9)
    print(f"K{t}:", g, "degrees", sorted(set(g.degrees())), to_graph6(g))

# the blocker families give K_{3,3,3}
print("K7 via constructions:", ha_falsify(gen.complete(7), 12, "constructions"))
