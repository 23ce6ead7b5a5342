"""Pawlak approximation spaces viewed as granular operator spaces."""

from roughdist import granular
from roughdist.formats import format_subset

space = granular.pawlak_from_partition([1, 2, 3], [{1, 2}, {3}])
print("Universe {1,2,3} with blocks {1,2} and {3}\n")

for a in space.subsets():
    print(f"  {format_subset(a):8} lower={format_subset(space.lower(a)):8} upper={format_subset(space.upper(a))}")

print("\nAxioms:")
for check in granular.validate_space(space).checks:
    print("  ", check)
for check in granular.check_admissible_granulation(space).checks:
    print("  ", check)

fw = granular.build_framework(space)
print(f"\nCrisp objects: {[format_subset(c) for c in fw.crisp]}")
print(f"Rough objects: {[format_subset(r) for r in fw.rough]}")
print(f"n={fw.n} k={fw.k} rough={fw.rough_count}")

q = granular.rough_quotient(space)
print("\nRough-equality classes (ordered componentwise):")
for pair, members in q.classes:
    print(f"  {pair}: {' '.join(format_subset(m) for m in members)}")

x = {1}
sl = granular.lower_definable_scope(x, fw.crisp)
su = granular.upper_definable_scope(x, fw.crisp)
print(f"\nFor x = {{1}}: crisp sets below {[format_subset(s) for s in sl]}, "
      f"above {[format_subset(s) for s in su]}, choices {granular.representation_count(x, fw.crisp)}")

d = granular.classify_definiteness(space, {1})
print(f"{{1}} stabilizes under upper approximation after {d.stabilization_index} step")

print("\nAcross every partition of a 4-element universe:")
for blocks in granular.iter_set_partitions([1, 2, 3, 4]):
    s = granular.pawlak_from_partition([1, 2, 3, 4], blocks)
    o = granular.oracle_classify(s)
    print(f"  {[sorted(b) for b in blocks]}: k={o.k} rough={o.rough}")
