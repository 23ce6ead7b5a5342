"""How many crisp objects can n objects support?

Walks through the chain scenarios: reflexive pairs (n = k^2 + k), off-diagonal
pairs (n = k^2), power-set models, and the fraction-of-pairs case where only a
share alpha of the k^2 - k pairs carry rough objects.
"""

from fractions import Fraction

from roughdist import feasibility as fz

print("Reflexive pairs: n = k^2 + k")
for n in (2, 6, 7, 110, 111):
    print(f"  n={n:>4}  k={fz.case0_k(n)}")

print("\nOff-diagonal pairs: n = k^2, so n - k = k^2 - k rough objects")
for n in (4, 9, 10, 1024):
    k = fz.case1_k(n)
    print(f"  n={n:>5}  k={k}  rough={None if k is None else n - k}")

models = fz.case1_powerset_models(10**8)
print(f"\nPower-set models 2^x = k^2 up to 10^8: {len(models)}")
print("  exponents:", [x for x, _, _ in models])
print(f"  the published count is {fz.REPORTED_POWERSET_MODELS[10**8]}, "
      f"which matches the number of powers of two up to 10^8 ({(10**8).bit_length()}), not the models")

print("\nFraction of pairs, n = 10^6, alpha = 1/2")
rep = fz.case2_admissible_ks(10**6, Fraction(1, 2))
lo, hi = rep.bounds_used
print(f"  candidate range k = {lo}..{hi}: {len(rep.candidates)} values")
print(f"  with k <= sqrt(n) as well: {fz.case2_count_values(10**6, Fraction(1, 2), trimmed=True)}")
print(f"  k whose exact share (n-k)/(k^2-k) is at most 1/2: {rep.ks}")

print("\nSolving n - k = pi (k^2 - k) for k, n = 35, pi = 2/3:", fz.case2_k_from_pi(35, Fraction(2, 3)))

print("\nGrid refinement for alpha, target 1/3 (10 steps per round):")
res = fz.alpha_refine(fz.target_comparator(Fraction(1, 3)))
for i, (a, b) in enumerate(res.history, 1):
    print(f"  round {i}: [{float(a):.7f}, {float(b):.7f}]")
print(f"  found {float(res.alpha):.9f} after {res.rounds} rounds")
