"""Hidden subgroup solvers for D_N.

:func:`solve_order_two` handles a hidden subgroup that is trivial or a single
reflection ``{(0,0),(k0,1)}``.  :func:`solve_dihedral` reduces the general
case to it: find the rotation part with the cyclic solver, pass to the
quotient ``D_M``, and look for one reflection there.
"""

from __future__ import annotations

import math
from dataclasses import asdict, dataclass, field

from .abelian import sample_count, solve_cyclic
from .group import GroupElement
from .oracle import DihedralFunction, quotient_function, restrict_to_cyclic, rotation_order
from .peaks import COS_MIN, VARIANTS, peak_find
from .rng import SplitMix64, as_rng
from .sampler import BACKENDS, CLOSED_FORM, TRIVIAL, QuantumExperiment


class BudgetExceeded(RuntimeError):
    """The solver issued more evaluations than its proven bound (a bug)."""


@dataclass(frozen=True)
class SolverConfig:
    sample_constant: float = 64.0
    statistic_variant: str = COS_MIN
    seed: int = 0
    backend: str = CLOSED_FORM

    def __post_init__(self):
        if not self.sample_constant > 0:
            raise ValueError("sample_constant must be positive")
        if self.statistic_variant not in VARIANTS:
            raise ValueError(f"unknown statistic variant {self.statistic_variant!r}")
        if self.backend not in BACKENDS:
            raise ValueError(f"unknown backend {self.backend!r}")


@dataclass
class OrderTwoTrace:
    N: int
    stage: str = ""
    m_prime: int = 0
    branch_zero_count: int = 0
    branch: int | None = None
    k_tilde: int | None = None
    score: float | None = None
    sampled: bool = False


@dataclass
class ReductionTrace:
    X1: list = field(default_factory=list)
    cyclic_generator: int = 0
    cyclic_queries: int = 0
    x1_verified: bool = True
    M: int = 0
    t: int = 0
    rounds: list = field(default_factory=list)


@dataclass
class SolverResult:
    outcome: object  # "trivial" or k0
    queries: int
    budget: int
    trace: object = None
    generators: tuple = ()

    def to_json(self, N: int, hidden: str | None = None) -> dict:
        out = {
            "N": N,
            "outcome": self.outcome,
            "generators": [list(g) for g in self.generators],
            "queries": self.queries,
            "budget": self.budget,
            "trace": asdict(self.trace) if self.trace is not None else None,
        }
        if hidden is not None:
            out["hidden"] = hidden
        return out


def sample_budget(N: int, sample_constant: float = 64.0) -> int:
    """``m' = 2 * ceil(c ln N)`` experiments."""
    return 2 * math.ceil(sample_constant * math.log(N)) if N > 1 else 0


def order_two_bound(N: int) -> int:
    """Largest integer not above ``89 log2 N + 7``."""
    return math.floor(89 * math.log2(N) + 7)


def repetitions(N: int, M: int) -> int:
    """``t = ceil(log(2N) / log(2M))``, computed exactly as the least t with (2M)^t >= 2N."""
    t = 1
    while (2 * M) ** t < 2 * N:
        t += 1
    return t


def solve_order_two(f: DihedralFunction, config: SolverConfig = SolverConfig(), rng=None) -> SolverResult:
    """Find ``k0`` for a hidden subgroup ``{(0,0),(k0,1)}``, or report ``trivial``.

    A non-trivial answer is always confirmed by an oracle comparison, so a
    trivial H always yields ``trivial``.  Uses at most ``m' + 5`` evaluations.
    """
    rng = as_rng(config.seed if rng is None else rng)
    N = f.N
    start = f.eval_count
    m_prime = sample_budget(N, config.sample_constant)
    trace = OrderTwoTrace(N=N, m_prime=m_prime)

    def finish(outcome):
        queries = f.eval_count - start
        if queries > m_prime + 5:
            raise BudgetExceeded(f"{queries} evaluations > {m_prime + 5}")
        gens = () if outcome == TRIVIAL else (GroupElement(outcome, 1),)
        return SolverResult(outcome, queries, order_two_bound(N), trace, gens)

    e = f.evaluate((0, 0))
    if f.evaluate((0, 1)) == e:
        trace.stage = "k0=0"
        return finish(0)
    if N % 2 == 0 and f.evaluate((N // 2, 1)) == e:
        trace.stage = "k0=N/2"
        return finish(N // 2)
    if N <= 2:
        trace.stage = "exhausted"
        return finish(TRIVIAL)

    if N == 3:
        # only one candidate frequency; sampling cannot change it
        k_tilde = 1
    else:
        trace.sampled = True
        samples = QuantumExperiment(f, config.backend).run(m_prime, rng.spawn("experiment"))
        m0 = int((samples.b == 0).sum())
        branch = 0 if 2 * m0 >= m_prime else 1
        peak = peak_find(samples.branch(branch), N, config.statistic_variant, branch)
        trace.branch_zero_count, trace.branch = m0, branch
        trace.score = peak.score
        k_tilde = peak.k_tilde
    trace.k_tilde = k_tilde

    trace.stage = "verify"
    if f.evaluate((k_tilde, 1)) == e:
        return finish(k_tilde)
    if (N - k_tilde) % N != k_tilde and f.evaluate((N - k_tilde, 1)) == e:
        return finish(N - k_tilde)
    return finish(TRIVIAL)


def solve_dihedral(f: DihedralFunction, config: SolverConfig = SolverConfig()) -> SolverResult:
    """Generating set for an arbitrary hidden subgroup of D_N.

    The rotation generator found by the cyclic solver is checked with one
    comparison against ``f(0,0)``; if it is not in H (probability at most
    1/N) it is dropped, so every returned generator lies in H.
    """
    rng = SplitMix64(config.seed)
    N = f.N
    start = f.eval_count
    trace = ReductionTrace()

    ab = solve_cyclic(restrict_to_cyclic(f), rng.spawn("cyclic"))
    trace.cyclic_generator = ab.generator
    trace.cyclic_queries = ab.queries
    X1 = []
    if ab.generator != 0:
        X1 = [GroupElement(ab.generator, 0)]
        if f.evaluate(X1[0]) != f.evaluate((0, 0)):
            trace.x1_verified = False
            X1 = []
    trace.X1 = [list(g) for g in X1]

    M = rotation_order(X1, N)
    t = repetitions(N, M)
    trace.M, trace.t = M, t
    g2 = quotient_function(f, X1)

    outcome = TRIVIAL
    for i in range(t):
        res = solve_order_two(g2, config, rng.spawn("round", i))
        trace.rounds.append({"outcome": res.outcome, "queries": res.queries, "stage": res.trace.stage})
        if res.outcome != TRIVIAL:
            outcome = res.outcome
            break
        if not res.trace.sampled:
            # deterministic answer; repeating cannot change it
            break

    X = list(X1)
    if outcome != TRIVIAL:
        X.append(GroupElement(outcome, 1))
    budget = sample_count(N) + 2 + t * order_two_bound(M)
    return SolverResult(outcome, f.eval_count - start, budget, trace, tuple(X))
