"""Solve the hidden subgroup problem for every subgroup of D_12.

Each subgroup is hidden behind a scrambled labelling; the solver first finds
the rotation part with the cyclic algorithm, then looks for a reflection in
the quotient.  Success means the returned generators span exactly H.
"""

from dihedral_hsp import DihedralGroup, SolverConfig, build_hidden_function, solve_dihedral
from dihedral_hsp.group import closure, enumerate_subgroups

group = DihedralGroup(12)
subgroups = enumerate_subgroups(group)
print(f"D_12 has {len(subgroups)} subgroups\n")
print(f"{'hidden':>16} {'|H|':>4} {'generators found':>22} {'queries':>8} {'budget':>7}  ok")
for i, H in enumerate(subgroups):
    f = build_hidden_function(group, H, labeling=i)
    res = solve_dihedral(f, SolverConfig(seed=i))
    gens = ";".join(f"{g.a},{g.b}" for g in res.generators) or "-"
    ok = closure(res.generators, group) == H
    print(f"{H.describe():>16} {H.order:4d} {gens:>22} {res.queries:8d} {res.budget:7d}  {'yes' if ok else 'NO'}")
