"""Command line experiment runner.

Commands: ``solve``, ``dist``, ``peak``, ``verify-reps``, ``dump-oracle``.
Exit codes: 0 ok, 2 bad arguments, 3 resource cap, 4 verification failure.
"""

from __future__ import annotations

import argparse
import json
import sys

import numpy as np

from . import harness
from .group import DihedralGroup, enumerate_order_two_subgroups, enumerate_subgroups
from .oracle import build_hidden_function, read_oracle_dump, reveal_hidden, write_oracle_dump
from .peaks import COS_MIN, VARIANTS, peak_find
from .reps import (
    check_irreps,
    fourier_transform,
    inverse_fourier,
    irreps_of_dihedral,
    matrix_coefficient_basis,
    projection_PH,
    verify_coset_corollary,
    verify_indicator_theorem,
    weak_sampling_distribution,
)
from .rng import SplitMix64, derive_seed
from .sampler import (
    BACKENDS,
    CLOSED_FORM,
    TRIVIAL,
    ResourceCapError,
    closed_form_distribution,
    draw_samples,
    write_samples,
)
from .solver import SolverConfig

EXIT_OK, EXIT_USAGE, EXIT_CAP, EXIT_VERIFY = 0, 2, 3, 4


class UsageError(ValueError):
    pass


def _add_selector(p: argparse.ArgumentParser, with_sweeps: bool = False) -> None:
    p.add_argument("--k0", type=int, help="hidden subgroup {(0,0),(k0,1)}")
    p.add_argument("--gens", help='generators of the hidden subgroup, e.g. "4,0;1,1"')
    p.add_argument("--trivial", action="store_true", help="trivial hidden subgroup")
    p.add_argument("--whole", action="store_true", help="the whole group D_N")
    if with_sweeps:
        p.add_argument("--random", action="store_true", help="uniformly random subgroup per trial")
        p.add_argument("--exhaustive", action="store_true", help="every subgroup, --trials each")


def _selected_subgroup(args, group):
    try:
        return harness.subgroup_for(group, args.k0, args.gens, args.trivial, args.whole)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc


def _emit(obj, path=None) -> None:
    text = json.dumps(obj, indent=2, sort_keys=True)
    if path:
        with open(path, "w") as fh:
            fh.write(text + "\n")
    else:
        print(text)


def cmd_solve(args) -> int:
    config = SolverConfig(args.sample_constant, args.variant, args.seed, args.backend)
    if args.oracle:
        with open(args.oracle) as fh:
            f = read_oracle_dump(fh)
        H = reveal_hidden(f)
        records = [harness.run_trial(i, H, args.seed, config, f=f) for i in range(max(1, args.trials))]
    else:
        if args.n is None or args.n < 1:
            raise UsageError("--n must be a positive integer")
        group = DihedralGroup(args.n)
        if args.trials < 1:
            raise UsageError("--trials must be at least 1")
        if args.exhaustive or args.random:
            if any([args.k0 is not None, args.gens, args.trivial, args.whole]) or (args.exhaustive and args.random):
                raise UsageError("choose exactly one subgroup selector")
            jobs = harness.solve_jobs(group, args.trials, args.seed, exhaustive=args.exhaustive, random=args.random)
        else:
            H = _selected_subgroup(args, group)
            jobs = harness.solve_jobs(group, args.trials, args.seed, H)
        records = harness.run_solve(jobs, args.seed, config, args.workers)

    text = harness.records_csv(records, timing=args.timing)
    if args.out:
        with open(args.out, "w", newline="") as fh:
            fh.write(text)
    summary = harness.summarize(records)
    summary.update({"N": records[0].N, "seed": args.seed, "backend": args.backend, "variant": args.variant})
    if args.exhaustive:
        summary["subgroups"] = len({r.hidden_desc for r in records})
    _emit(summary, args.summary)
    return EXIT_OK


def cmd_dist(args) -> int:
    if args.n is None or args.n < 1:
        raise UsageError("--n must be a positive integer")
    if (args.k0 is None) == (not args.trivial):
        raise UsageError("give exactly one of --k0 or --trivial")
    k0 = TRIVIAL if args.trivial else args.k0
    if k0 != TRIVIAL and not 0 <= k0 < args.n:
        raise UsageError(f"k0 must lie in [0, {args.n})")
    report = harness.distribution_report(args.n, k0, args.compare_backends, args.seed)
    if args.samples:
        dist = closed_form_distribution(args.n, k0)
        s = draw_samples(dist, args.samples, derive_seed(args.seed, "dist-samples"))
        report["empirical"] = harness.empirical_comparison(dist.probs, s.a, s.b)
        if args.dump:
            write_samples(s, args.dump, k0)
    _emit(report, args.report)
    return EXIT_OK


def cmd_peak(args) -> int:
    N = args.n
    if N is None or N < 2:
        raise UsageError("--n must be at least 2")
    if args.samples is not None:
        z = [int(x) for x in args.samples.split(",") if x.strip()]
        res = peak_find(z, N, args.variant, args.branch)
        _emit({"N": N, "samples": z, "branch": args.branch, "k_tilde": res.k_tilde, "score": res.score})
        return EXIT_OK
    k0s = None if args.k0 is None else [args.k0]
    if args.k0 is not None and not (0 < args.k0 < N and 2 * args.k0 != N):
        raise UsageError("peak study needs 0 < k0 < N with 2*k0 != N")
    report = harness.peak_study(N, args.trials, args.seed, args.m, k0s, args.variant, args.branch)
    _emit(report, args.report)
    return EXIT_OK


def verify_reps(N: int, all_subgroups: bool = False, seed: int = 0, tol: float = 1e-10) -> dict:
    """Run every representation-theory check for D_N."""
    group = DihedralGroup(N)
    gamma = irreps_of_dihedral(group)
    ok = True
    irrep_check = check_irreps(gamma)
    ok &= irrep_check["ok"]

    B, _ = matrix_coefficient_basis(gamma)
    gram_err = float(np.max(np.abs(B.conj().T @ B - np.eye(group.order))))
    ok &= gram_err < tol

    rng = SplitMix64(derive_seed(seed, "verify-reps", N))
    f = rng.random(group.order) + 1j * rng.random(group.order)
    F = fourier_transform(f, gamma)
    plancherel = abs(F.norm_squared() - float(np.sum(np.abs(f) ** 2)))
    roundtrip = float(np.max(np.abs(inverse_fourier(F, gamma) - f)))
    ok &= plancherel < tol and roundtrip < tol

    if all_subgroups:
        subs = enumerate_subgroups(group)
    else:
        subs = enumerate_subgroups(group)[:1] + enumerate_order_two_subgroups(group)
    per_subgroup = []
    for H in subs:
        theorem = verify_indicator_theorem(H, gamma, tol)
        corollary_dev = max(
            r["max_deviation"] for s in group.elements() for r in verify_coset_corollary(s, H, gamma, tol)
        )
        proj_dev = 0.0
        for rho in gamma:
            P = projection_PH(rho, H)
            proj_dev = max(proj_dev, float(np.max(np.abs(P @ P - P))), float(np.max(np.abs(P - P.conj().T))))
        weak_total = abs(sum(weak_sampling_distribution(group.identity, H, gamma).values()) - 1)
        sub_ok = (
            all(r["ok"] for r in theorem) and corollary_dev < tol and proj_dev < 1e-12 and weak_total < tol
        )
        ok &= sub_ok
        per_subgroup.append({
            "subgroup": H.describe(),
            "order": H.order,
            "indicator": [{k: r[k] for k in ("irrep_label", "d", "scalar", "max_deviation")} for r in theorem],
            "corollary_max_deviation": corollary_dev,
            "projection_max_deviation": proj_dev,
            "weak_sampling_total_error": weak_total,
            "ok": sub_ok,
        })
    return {
        "N": N,
        "irreps": irrep_check,
        "gram_error": gram_err,
        "plancherel_error": plancherel,
        "roundtrip_error": roundtrip,
        "subgroups": per_subgroup,
        "ok": bool(ok),
    }


def cmd_verify_reps(args) -> int:
    if args.n is None or args.n < 1 or 2 * args.n > 256:
        raise UsageError("verify-reps needs 1 <= N and 2N <= 256")
    report = verify_reps(args.n, args.all_subgroups, args.seed)
    _emit(report, args.report)
    return EXIT_OK if report["ok"] else EXIT_VERIFY


def cmd_dump_oracle(args) -> int:
    if args.n is None or args.n < 1:
        raise UsageError("--n must be a positive integer")
    group = DihedralGroup(args.n)
    H = _selected_subgroup(args, group)
    f = build_hidden_function(group, H, derive_seed(args.seed, "oracle", 0))
    if args.out:
        with open(args.out, "w") as fh:
            write_oracle_dump(f, fh)
    else:
        write_oracle_dump(f, sys.stdout)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="dihedral-hsp", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("solve", help="end-to-end hidden subgroup recovery")
    p.add_argument("--n", type=int)
    _add_selector(p, with_sweeps=True)
    p.add_argument("--oracle", help="replay an oracle dump instead of building one")
    p.add_argument("--trials", type=int, default=1)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--backend", choices=BACKENDS, default=CLOSED_FORM)
    p.add_argument("--variant", choices=VARIANTS, default=COS_MIN)
    p.add_argument("--sample-constant", type=float, default=64.0)
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--out", help="CSV of trial records")
    p.add_argument("--summary", help="write the JSON summary here instead of stdout")
    p.add_argument("--timing", action="store_true", help="fill the ms column (breaks byte-reproducibility)")
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("dist", help="exact outcome distributions")
    p.add_argument("--n", type=int)
    p.add_argument("--k0", type=int)
    p.add_argument("--trivial", action="store_true")
    p.add_argument("--compare-backends", action="store_true")
    p.add_argument("--samples", type=int, default=0, help="draw this many samples and run a chi-square test")
    p.add_argument("--dump", help="write drawn samples as CSV (with a .json sidecar)")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--report")
    p.set_defaults(func=cmd_dist)

    p = sub.add_parser("peak", help="peak-finding success study")
    p.add_argument("--n", type=int)
    p.add_argument("--k0", type=int)
    p.add_argument("--m", type=int, help="samples per trial (default ceil(64 ln N))")
    p.add_argument("--trials", type=int, default=200)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--variant", choices=VARIANTS, default=COS_MIN)
    p.add_argument("--branch", type=int, choices=(0, 1), default=0)
    p.add_argument("--samples", help="replay comma-separated samples instead of sampling")
    p.add_argument("--report")
    p.set_defaults(func=cmd_peak)

    p = sub.add_parser("verify-reps", help="representation-theory identities for D_N")
    p.add_argument("--n", type=int)
    p.add_argument("--all-subgroups", action="store_true")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--report")
    p.set_defaults(func=cmd_verify_reps)

    p = sub.add_parser("dump-oracle", help="write an oracle table for replay")
    p.add_argument("--n", type=int)
    _add_selector(p)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out")
    p.set_defaults(func=cmd_dump_oracle)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except ResourceCapError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CAP


if __name__ == "__main__":
    sys.exit(main())
