"""Rough distribution index: how differently rough objects sit among the crisp ones."""

from roughdist import granular, indices

for blocks in ([{1, 2}, {3}], [{1, 2, 3}], [{1}, {2, 3}], [{1}, {2}, {3}]):
    space = granular.pawlak_from_partition([1, 2, 3], blocks)
    fw = granular.build_framework(space)
    idx = indices.iota(fw.pairs())
    line = f"blocks {[sorted(b) for b in blocks]}: n={fw.n} k={fw.k} iota = {idx.render()}"
    if fw.n > fw.k:
        line += f"   relative: {indices.iota_star(idx, fw.n, fw.k).render()}"
    print(line)

print("\nThe four cases of a single comparison:")
P = granular.ApproximationPair
base = P(frozenset(), frozenset({1, 2}))
for other in (base, P(frozenset({3}), frozenset({3, 4})), P(frozenset({1}), frozenset({1, 2})),
              P(frozenset(), frozenset({1, 2, 3}))):
    print(f"  {base} vs {other}: {indices.nu(base, other).value}")
