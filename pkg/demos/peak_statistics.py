"""How many samples does peak finding need?

Draw branch-0 samples for N = 64, k0 = 11 and count how often the cosine
peak lands on k0 as the sample size grows.  Also shows the threshold test
that separates k0 from wrong frequencies.
"""

from dihedral_hsp import closed_form_distribution, peak_find
from dihedral_hsp.harness import branch_samples, misjudgment_rates
from dihedral_hsp.peaks import HoeffdingParams, hoeffding_bound
from dihedral_hsp.rng import SplitMix64

N, k0, trials = 64, 11, 400
rng = SplitMix64(5)
print(" m   success")
for m in (4, 8, 16, 32, 64, 128):
    z = branch_samples(N, k0, 0, (trials, m), rng)
    hits = sum(peak_find(row, N).k_tilde == k0 for row in z)
    print(f"{m:3d}   {hits / trials:.3f}")

print("\nthreshold test misjudgment rates (m = 128):")
rates = misjudgment_rates(N, k0, 128, [k0, 3, 20, 32], 2000, seed=1)
for k, r in rates.items():
    print(f"  k = {k:2d}: {r:.4f}")
print(f"Hoeffding bound exp(-m/32) at m = 128: {hoeffding_bound(HoeffdingParams(128, 0.25)):.4f}")
print(f"\nP(b=0) for k0 = {k0}: {closed_form_distribution(N, k0).branch_mass(0):.3f}")
