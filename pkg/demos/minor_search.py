"""
Finding minors and checking them twice
======================================

Search for a K5 minor in the Petersen graph, show the branch sets, and
confirm with the independent deletion/contraction oracle.
"""
from minorforge import generators as gen
from minorforge import test_minor, test_minor_oracle2, verify_model

petersen = gen.petersen()

# K5: contract a perfect matching between the outer and inner cycles
model = test_minor(gen.complete(5), petersen)
for v, branch in sorted(model.branch_sets.items()):
    print(f"K5 vertex {v} -> Petersen vertices {sorted(branch)}")
print("verified:", bool(verify_model(model)))
print("second oracle agrees:", test_minor_oracle2(gen.complete(5), petersen))

# K6 needs 15 edges between branch sets; the search proves it absent
print("K6 minor:", test_minor(gen.complete(6), petersen))
print("second oracle:", test_minor_oracle2(gen.complete(6), petersen))
