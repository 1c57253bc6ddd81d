"""Fourier analysis on D_6: irreps, Plancherel, and coset indicators.

The transform of a subgroup indicator is a scaled projection onto the
vectors fixed by H, and weak Fourier sampling of a coset state sees the
rank of that projection.
"""

import numpy as np

from dihedral_hsp import DihedralGroup, fourier_transform, irreps_of_dihedral
from dihedral_hsp.group import closure
from dihedral_hsp.reps import (
    block_masses,
    check_irreps,
    indicator,
    projection_PH,
    verify_indicator_theorem,
    weak_sampling_distribution,
)

group = DihedralGroup(6)
gamma = irreps_of_dihedral(group)
print("irreps:", ", ".join(f"{r.label} (d={r.dim})" for r in gamma))
print("checks:", {k: v for k, v in check_irreps(gamma).items() if k != "ok"})

H = closure([(3, 0), (1, 1)], group)
print(f"\nH = {H.describe()}, |H| = {H.order}")
F = fourier_transform(indicator(H.elements, group), gamma)
for row in verify_indicator_theorem(H, gamma):
    P = projection_PH(gamma.by_label(row["irrep_label"]), H)
    print(f"  {row['irrep_label']:>8}: scalar {row['scalar']:.4f}, rank P_H = {round(np.trace(P).real)}, "
          f"deviation {row['max_deviation']:.1e}")

s = group.element(2, 1)
masses = block_masses(weak_sampling_distribution(s, H, gamma))
print(f"\nweak Fourier sampling of the coset {tuple(s)}H:")
for label, p in masses.items():
    print(f"  {label:>8}: {p:.4f}")
print(f"Plancherel check: |f|^2 = {H.order}, sum of |F|^2 = {F.norm_squared():.6f}")
