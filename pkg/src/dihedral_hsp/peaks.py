"""Classical post-processing: cosine peak finding and its concentration bounds."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .sampler import cos_turn

COS_MIN = "cos_min"
SIN_MAX = "sin_max"
VARIANTS = (COS_MIN, SIN_MAX)

CONSISTENT = "consistent"
INCONSISTENT = "inconsistent"

_CHUNK = 1 << 22


class EmptySampleError(ValueError):
    pass


@dataclass(frozen=True)
class HoeffdingParams:
    m: int
    alpha: float
    lower: float = -1.0
    upper: float = 1.0

    def __post_init__(self):
        if self.m < 0:
            raise ValueError("m must be non-negative")
        if not self.alpha > 0:
            raise ValueError("alpha must be positive")
        if self.lower > self.upper:
            raise ValueError("lower must not exceed upper")


def hoeffding_bound(p: HoeffdingParams) -> float:
    """Upper bound ``exp(-2 alpha^2 m / (u - l)^2)`` on ``P[S - E[S] >= alpha m]``."""
    width = p.upper - p.lower
    if width == 0:
        raise ValueError("degenerate range: upper == lower")
    return math.exp(-2.0 * p.alpha**2 * p.m / width**2)


@dataclass(frozen=True)
class PeakResult:
    k_tilde: int
    score: float
    branch: int


def sin_turn(r, N: int) -> np.ndarray:
    """``sin(2 pi r / N)`` with exact values at quarter turns."""
    r = np.asarray(r, dtype=np.int64) % N
    s = np.sin(2.0 * np.pi * r / N)
    s = np.where((r == 0) | (2 * r == N), 0.0, s)
    s = np.where(4 * r == N, 1.0, s)
    return np.where(4 * r == 3 * N, -1.0, s)


def frequency_sums(z, N: int, ks=None, kind: str = "cos") -> np.ndarray:
    """``T(k) = sum_i cos(2 pi k z_i / N)`` (or sin) for each ``k`` in ``ks``.

    Samples are binned first, so the cost is ``O(N * len(ks))``.
    """
    counts = np.bincount(np.asarray(z, dtype=np.int64) % N, minlength=N).astype(np.float64)
    if ks is None:
        ks = np.arange(1, N // 2 + 1)
    ks = np.asarray(ks, dtype=np.int64)
    trig = cos_turn if kind == "cos" else sin_turn
    zs = np.arange(N, dtype=np.int64)
    out = np.empty(len(ks))
    step = max(1, _CHUNK // N)
    for lo in range(0, len(ks), step):
        block = ks[lo : lo + step]
        out[lo : lo + step] = trig(np.outer(block, zs) % N, N) @ counts
    return out


def _first_best(values: np.ndarray, m: int, sign: float) -> int:
    v = sign * values
    best = v.max()
    # exact ties can differ by rounding; break them toward the smallest k
    return int(np.flatnonzero(v >= best - 1e-9 * max(1, m))[0])


def peak_find(samples, N: int, variant: str = COS_MIN, branch: int = 0) -> PeakResult:
    """Frequency ``k`` in ``1..N//2`` that best explains one branch's samples.

    Branch 0 maximises ``sum cos(2 pi k z_i / N)``.  On branch 1 the
    ``cos_min`` variant minimises the same sum (the branch-1 law is
    proportional to ``sin^2(pi k0 z / N)``, so the true frequency gives mean
    ``-1/2``); ``sin_max`` maximises ``sum sin(2 pi k z_i / N)`` instead.
    Ties go to the smallest ``k``.
    """
    z = np.asarray(samples, dtype=np.int64)
    if z.size == 0:
        raise EmptySampleError("no samples on this branch")
    if N < 2:
        raise ValueError("peak finding needs N >= 2")
    if variant not in VARIANTS:
        raise ValueError(f"unknown variant {variant!r}")
    ks = np.arange(1, N // 2 + 1)
    if branch == 1 and variant == SIN_MAX:
        T = frequency_sums(z, N, ks, kind="sin")
        i = _first_best(T, z.size, 1.0)
    else:
        T = frequency_sums(z, N, ks)
        i = _first_best(T, z.size, -1.0 if branch == 1 else 1.0)
    return PeakResult(int(ks[i]), float(T[i]), branch)


def single_point_test(samples, k: int, N: int) -> str:
    """Judge whether ``k`` is ``k0`` or ``N - k0`` from branch-0 samples.

    ``consistent`` iff ``sum cos(2 pi k z_i / N) > m/4``; wrong with
    probability at most ``exp(-m/32)``.
    """
    if not 0 < k < N:
        raise ValueError("need 0 < k < N")
    z = np.asarray(samples, dtype=np.int64)
    total = float(frequency_sums(z, N, [k])[0])
    return CONSISTENT if total > z.size / 4 else INCONSISTENT


def exact_mean_cos(z_law: np.ndarray, k: int) -> float:
    """``E[cos(2 pi k Z / N)]`` by full summation over the law of Z."""
    N = len(z_law)
    return float(np.dot(z_law, cos_turn(k * np.arange(N), N)))
