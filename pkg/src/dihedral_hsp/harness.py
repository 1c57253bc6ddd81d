"""Experiment runners behind the command line interface.

All randomness descends from one root seed.  Trial ``i`` uses
``derive_seed(root, "oracle", i)`` for its label scramble and
``derive_seed(root, "solver", i)`` for the solver, so results do not depend
on how trials are spread over workers.
"""

from __future__ import annotations

import csv
import io
import math
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass

import numpy as np
from scipy.stats import chi2

from .group import DihedralGroup, GroupElement, Subgroup, closure, enumerate_subgroups, reflection_subgroup
from .oracle import DihedralFunction, build_hidden_function
from .peaks import COS_MIN, INCONSISTENT, peak_find, single_point_test
from .rng import SplitMix64, derive_seed
from .sampler import (
    TRIVIAL,
    closed_form_distribution,
    cos_turn,
    conditional_z_distribution,
    inverse_cdf,
    simulate_circuit,
)
from .solver import SolverConfig, solve_dihedral

CSV_COLUMNS = ["trial", "N", "hidden_desc", "outcome", "success", "queries", "budget", "seed", "ms"]


@dataclass
class TrialRecord:
    trial: int
    N: int
    hidden_desc: str
    outcome: str
    success: bool
    queries: int
    budget: int
    seed: int
    ms: float | None = None
    generators: tuple = ()

    def row(self, timing: bool = False) -> list:
        ms = f"{self.ms:.3f}" if timing and self.ms is not None else ""
        return [
            self.trial, self.N, self.hidden_desc, self.outcome, int(self.success),
            self.queries, self.budget, self.seed, ms,
        ]


def parse_generators(text: str, group: DihedralGroup) -> list[GroupElement]:
    """Parse ``"4,0;1,1"`` into elements."""
    gens = []
    for part in filter(None, (p.strip() for p in text.split(";"))):
        a, b = (int(x) for x in part.split(","))
        if b not in (0, 1):
            raise ValueError(f"bad generator {part!r}")
        gens.append(group.element(a, b))
    return gens


def subgroup_for(group: DihedralGroup, k0=None, gens=None, trivial=False, whole=False) -> Subgroup:
    if sum(x is not None and x is not False for x in (k0, gens, trivial or None, whole or None)) != 1:
        raise ValueError("choose exactly one subgroup selector")
    if k0 is not None:
        if not 0 <= k0 < group.N:
            raise ValueError(f"k0 must lie in [0, {group.N})")
        return reflection_subgroup(k0, group)
    if gens is not None:
        return closure(parse_generators(gens, group) if isinstance(gens, str) else gens, group)
    if trivial:
        return closure([], group)
    return closure([(1 % group.N, 0), (0, 1)], group)


def run_trial(
    trial: int, H: Subgroup, root_seed: int, config: SolverConfig, f: DihedralFunction | None = None
) -> TrialRecord:
    group = H.parent
    if f is None:
        f = build_hidden_function(group, H, derive_seed(root_seed, "oracle", trial))
    seed = derive_seed(root_seed, "solver", trial)
    cfg = SolverConfig(config.sample_constant, config.statistic_variant, seed, config.backend)
    t0 = time.perf_counter()
    res = solve_dihedral(f, cfg)
    ms = 1000 * (time.perf_counter() - t0)
    # success is recomputed from the group, never taken from the solver
    success = closure(res.generators, group) == H
    outcome = ";".join(f"{g.a},{g.b}" for g in res.generators) or TRIVIAL
    return TrialRecord(trial, group.N, H.describe(), outcome, success, res.queries, res.budget, seed, ms, res.generators)


def _run_trial_args(args):
    return run_trial(*args)


def run_solve(jobs, root_seed: int, config: SolverConfig, workers: int = 1) -> list[TrialRecord]:
    """``jobs`` is a list of ``(trial_id, H)``; records come back in trial order."""
    tasks = [(i, H, root_seed, config) for i, H in jobs]
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as ex:
            records = list(ex.map(_run_trial_args, tasks, chunksize=8))
    else:
        records = [run_trial(*t) for t in tasks]
    return sorted(records, key=lambda r: r.trial)


def solve_jobs(group: DihedralGroup, trials: int, root_seed: int, H: Subgroup | None = None,
               exhaustive: bool = False, random: bool = False) -> list[tuple[int, Subgroup]]:
    if exhaustive:
        subs = enumerate_subgroups(group)
        return list(enumerate(H for H in subs for _ in range(trials)))
    if random:
        subs = enumerate_subgroups(group)
        rng = SplitMix64(derive_seed(root_seed, "selector"))
        return [(i, subs[rng.integers(len(subs))]) for i in range(trials)]
    return [(i, H) for i in range(trials)]


def records_csv(records: list[TrialRecord], timing: bool = False) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(CSV_COLUMNS)
    for r in records:
        w.writerow(r.row(timing))
    return buf.getvalue()


def summarize(records: list[TrialRecord]) -> dict:
    n = len(records)
    q = [r.queries for r in records]
    return {
        "trials": n,
        "success_rate": sum(r.success for r in records) / n if n else float("nan"),
        "mean_queries": float(np.mean(q)) if n else float("nan"),
        "max_queries": max(q) if n else 0,
        "budget": max(r.budget for r in records) if n else 0,
    }


def distribution_report(N: int, k0=TRIVIAL, compare_backends: bool = False, labeling: int = 0) -> dict:
    """Exact outcome law (closed form) and, optionally, the simulated one."""
    group = DihedralGroup(N)
    closed = closed_form_distribution(N, k0)
    report = {"N": N, "k0_or_trivial": k0, "closed_form": closed.probs.tolist()}
    if compare_backends:
        H = closure([], group) if k0 == TRIVIAL else reflection_subgroup(k0, group)
        sim = simulate_circuit(build_hidden_function(group, H, labeling)).outcome_distribution()
        report["state_vector"] = sim.probs.tolist()
        report["total_variation"] = closed.total_variation(sim)
    return report


def empirical_comparison(dist_probs: np.ndarray, samples_a, samples_b) -> dict:
    """Chi-square goodness of fit over outcomes with positive probability."""
    N = dist_probs.shape[1]
    p = dist_probs.reshape(-1)
    counts = np.bincount(np.asarray(samples_b) * N + np.asarray(samples_a), minlength=2 * N)
    m = counts.sum()
    pos = p > 0
    expected = m * p[pos]
    stat = float(np.sum((counts[pos] - expected) ** 2 / expected))
    dof = int(pos.sum()) - 1
    return {
        "m": int(m),
        "chi_square": stat,
        "dof": dof,
        "p_value": float(chi2.sf(stat, dof)) if dof > 0 else 1.0,
        "zero_mass_hits": int(counts[~pos].sum()),
    }


def branch_samples(N: int, k0: int, branch: int, shape, rng: SplitMix64) -> np.ndarray:
    """Draws of ``a`` conditioned on the second register equal to ``branch``."""
    law = conditional_z_distribution(closed_form_distribution(N, k0), branch)
    n = int(np.prod(shape))
    return inverse_cdf(law, rng.random(n)).reshape(shape)


def peak_study(N: int, trials: int, seed: int, m: int | None = None, k0s=None,
               variant: str = COS_MIN, branch: int = 0) -> dict:
    """Empirical success of peak finding per ``k0`` against its proven bounds."""
    if m is None:
        m = math.ceil(64 * math.log(N))
    if k0s is None:
        k0s = [k for k in range(1, N) if 2 * k != N]
    bound = 1 - 1 / (2 * N)
    sigma = math.sqrt(bound * (1 - bound) / trials)
    rows = []
    for k0 in k0s:
        rng = SplitMix64(derive_seed(seed, "peak", N, k0, m, branch))
        z = branch_samples(N, k0, branch, (trials, m), rng)
        target = min(k0, N - k0)
        hits = 0
        true_k_misses = 0
        for row in z:
            hits += peak_find(row, N, variant, branch).k_tilde == target
            if branch == 0:
                true_k_misses += single_point_test(row, target, N) == INCONSISTENT
        rate = hits / trials
        rows.append({
            "k0": k0,
            "success_rate": rate,
            "success_bound": bound,
            "threshold_3sigma": bound - 3 * sigma,
            "meets_bound": rate >= bound - 3 * sigma,
            "threshold_bound": math.exp(-m / 32),
            "true_k_misjudged_rate": true_k_misses / trials if branch == 0 else None,
        })
    return {"N": N, "m": m, "trials": trials, "variant": variant, "branch": branch, "rows": rows}


def misjudgment_rates(N: int, k0: int, m: int, ks, trials: int, seed: int) -> dict[int, float]:
    """Per-k rate at which the ``m/4`` threshold test misjudges ``k``."""
    rng = SplitMix64(derive_seed(seed, "threshold", N, k0, m))
    z = branch_samples(N, k0, 0, (trials, m), rng)
    out = {}
    for k in ks:
        right = k in (k0, N - k0)
        T = cos_turn((k * z) % N, N).sum(axis=1)
        # same threshold as single_point_test: consistent iff T > m/4
        wrong = (T <= m / 4) if right else (T > m / 4)
        out[int(k)] = float(wrong.mean())
    return out
