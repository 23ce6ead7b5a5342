"""Counting distributions of rough objects over pairs of crisp objects."""

from roughdist import counting
from roughdist.counting import PartitionConstraint
from roughdist.poset import boolean_lattice, chain_poset

c = PartitionConstraint(r=4, g=2, a=1, b=3)
print("Loads for 4 rough objects on 2 slots, each between 1 and 3:")
for comp in counting.bounded_compositions(c):
    print("  ", comp)
print("  ", counting.bounded_model_count(c))

print("\nA chain of 3 crisp objects has 6 ordered pairs.")
for r in range(4):
    print(f"  r={r}: {counting.chain_distribution_count(r, 3)} distributions")

print("\nCutting a chain of 3 back to 2 crisp objects removes",
      counting.branched_chain_count(2, 3, 2), "of the distributions of 2 rough objects")

b2 = boolean_lattice(2)
print("\nCrisp objects forming the Boolean lattice on two atoms:")
for r in range(4):
    res = counting.chain_cover_model_count(b2, r)
    print(f"  r={r}: {res}   brute force: {counting.placement_oracle(b2, r)}")

print("\nSame lattice, every pair loaded with 1 or 2 objects (10 pairs, r=14):")
res = counting.chain_cover_model_count(b2, 14, bounds=(1, 2))
print("  ", res)

print("\nChain of 5 (20 pairs), 25 rough objects, each pair holding 1 or 2:")
print("  ", counting.chain_cover_model_count(chain_poset(5), 25, (1, 2)))
