"""Finite posets: width, chain covers, gradings and distinct representatives."""

import numpy as np

from roughdist import poset
from roughdist.formats import parse_poset

b3 = poset.boolean_lattice(3)
w, anti = poset.width(b3)
print(f"Boolean lattice on 3 atoms: width {w}, antichain {[sorted(a) for a in anti]}")
for c in poset.disjoint_chain_cover(b3).chains:
    print("   chain:", [sorted(x) for x in c])
print("   symmetric chains:", [[sorted(x) for x in c] for c in poset.symmetric_chain_decomposition(b3)])
print("   Hasse index:", poset.hasse_index(b3))

p = parse_poset("""
elements: 0 a b c 1
0 <= a
a <= b
b <= 1
0 <= c
c <= 1
""")
print("\nA pentagon: graded?", poset.grading(p) is not None, "obstruction:", poset.grading_obstruction(p))

print("\nNumber of posets up to isomorphism:", [sum(1 for _ in poset.iter_posets(m)) for m in range(1, 6)])

rng = np.random.default_rng(3)
q = poset.random_poset(9, 0.3, rng)
print(f"\nRandom poset on 9 elements: width {poset.width(q)[0]}, brute force {len(poset.max_antichain_bruteforce(q))}")

fam = poset.SetFamily.of([{1, 2}, {2, 3}, {1, 3}, {3, 4}])
print("\nFamily {1,2} {2,3} {1,3} {3,4}: Hall holds?", poset.hall_condition(fam), "SDR:", poset.find_sdr(fam))
fam = poset.SetFamily.of([{1}, {2}, {1, 2}])
print("Family {1} {2} {1,2}: Hall holds?", poset.hall_condition(fam), "SDR:", poset.find_sdr(fam))
