"""Hidden subgroups of the cyclic group Z_N by Fourier sampling.

Each experiment prepares ``sum_x |x>|gamma(x)>``, measures the label
register (collapsing onto a coset ``s + H``), applies the QFT and measures,
which yields a uniformly random character index ``k`` with ``k*h = 0 mod N``
for every ``h`` in H.  The subgroup is recovered classically from the gcd of
the samples.

Sample count: with ``m = 2*ceil(log2 N) + 2`` samples, the gcd overshoots
only if all samples fall into a proper subgroup of ``H^perp``, which has
probability at most ``sum_{p | |H^perp|} p**-m <= log2(N) * 2**-m <= 1/N``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import reduce
from typing import NamedTuple

import numpy as np

from .oracle import CyclicFunction
from .rng import as_rng
from .sampler import inverse_cdf, qft


class OrthogonalSample(NamedTuple):
    k: int


@dataclass(frozen=True)
class CyclicSubgroup:
    """``<generator>`` in Z_N; generator 0 is the trivial subgroup."""

    N: int
    generator: int

    @property
    def elements(self) -> tuple[int, ...]:
        step = self.generator % self.N or self.N
        return tuple(range(0, self.N, math.gcd(step, self.N)))

    def __contains__(self, x: int) -> bool:
        return x % self.N in set(self.elements)

    @property
    def order(self) -> int:
        return len(self.elements)


@dataclass(frozen=True)
class AbelianResult:
    generator: int
    samples_used: int
    queries: int
    samples: tuple[int, ...] = ()

    def subgroup(self, N: int) -> CyclicSubgroup:
        return CyclicSubgroup(N, self.generator)


def sample_count(N: int) -> int:
    return 2 * math.ceil(math.log2(N)) + 2 if N > 1 else 2


def _fibers(f: CyclicFunction) -> dict[int, np.ndarray]:
    # simulation-side view of the oracle, read once per function
    cache = getattr(f, "_fiber_cache", None)
    if cache is None:
        table = f.peek_table()
        cache = {}
        for x, label in enumerate(table.tolist()):
            cache.setdefault(label, []).append(x)
        cache = {k: np.array(v) for k, v in cache.items()}
        f._fiber_cache = cache
    return cache


def coset_state_distribution(N: int, coset) -> np.ndarray:
    """Measurement law of ``k`` after Fourier transforming the uniform coset state."""
    psi = np.zeros(N, dtype=np.complex128)
    psi[np.asarray(coset)] = 1.0 / math.sqrt(len(coset))
    p = np.abs(qft(N, "forward", psi)) ** 2
    # true masses are 0 or at least 1/N; drop FFT round-off
    p[p < 1e-12 / N] = 0.0
    return p / p.sum()


def orthogonal_distribution(f: CyclicFunction, x0: int = 0) -> np.ndarray:
    """Exact law of a sample when the label measurement selects the coset of ``x0``."""
    fibers = _fibers(f)
    label = f.parent._lookup(x0 % f.N, 0)
    return coset_state_distribution(f.N, fibers[label])


def sample_orthogonal(f: CyclicFunction, seed) -> OrthogonalSample:
    """One run of the prepare / measure / transform / measure experiment.

    Costs exactly one evaluation of ``f``.
    """
    rng = as_rng(seed)
    N = f.N
    # measuring the label register of the uniform superposition picks a
    # uniformly random point's coset
    x0 = rng.integers(N)
    label = f.evaluate(x0)
    p = coset_state_distribution(N, _fibers(f)[label])
    return OrthogonalSample(int(inverse_cdf(p, rng.random())))


def recover_from_orthogonal(samples, N: int) -> CyclicSubgroup:
    """``{x : k*x = 0 mod N for all sampled k}``, i.e. ``<N / gcd(samples, N)>``."""
    ks = [int(s[0] if isinstance(s, tuple) else s) for s in samples]
    if not ks:
        raise ValueError("need at least one sample")
    g = reduce(math.gcd, ks, N)
    return CyclicSubgroup(N, (N // g) % N)


def solve_cyclic(f: CyclicFunction, seed) -> AbelianResult:
    rng = as_rng(seed)
    N = f.N
    m = sample_count(N)
    before = f.eval_count
    ks = [sample_orthogonal(f, rng.spawn("sample", i)).k for i in range(m)]
    H = recover_from_orthogonal(ks, N)
    return AbelianResult(H.generator, m, f.eval_count - before, tuple(ks))
