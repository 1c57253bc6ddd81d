"""Measurement statistics of the dihedral Fourier-sampling experiment.

The experiment prepares ``|0>|0>|0>``, applies ``F_N^-1 (x) W (x) I``, the
oracle unitary ``U_gamma``, then ``F_N (x) W (x) I``, and measures the first
two registers, giving an outcome ``(a, b)``.  Two backends produce the outcome
law:

* ``state_vector``: dense simulation of the three registers.
* ``closed_form``: for a hidden subgroup ``{(0,0),(k0,1)}``,
  ``P(a,0) = cos^2(pi k0 a / N) / N`` and ``P(a,1) = sin^2(pi k0 a / N) / N``;
  uniform ``1/(2N)`` for trivial H; for the half turn ``{(0,0),(N/2,0)}``
  (even N) ``P(a,b) = 1/N`` on even ``a`` and 0 on odd ``a``.

Outcomes are ordered b-major (all ``(a,0)`` then all ``(a,1)``), which fixes
the inverse-CDF sampling order.
"""

from __future__ import annotations

import csv
import json
import os
from dataclasses import dataclass, field
from typing import NamedTuple

import numpy as np

from .oracle import DihedralFunction
from .rng import as_rng

CLOSED_FORM = "closed_form"
STATE_VECTOR = "state_vector"
BACKENDS = (CLOSED_FORM, STATE_VECTOR)

DEFAULT_AMPLITUDE_CAP = 2**24
AMPLITUDE_CAP_ENV = "DIHEDRAL_HSP_MAX_AMPLITUDES"
TRIVIAL = "trivial"
HALF_TURN = "half_turn"


class ResourceCapError(MemoryError):
    """The dense state would exceed the configured amplitude cap."""


class EmptyBranchError(ValueError):
    """Conditioning on a measurement branch with zero probability."""


def amplitude_cap() -> int:
    return int(os.environ.get(AMPLITUDE_CAP_ENV, DEFAULT_AMPLITUDE_CAP))


def qft(N: int, direction: str, state) -> np.ndarray:
    """Quantum Fourier transform on Z_N.

    ``forward`` maps ``|i>`` to ``N**-0.5 * sum_j w**(i*j) |j>`` with
    ``w = exp(2 pi i / N)``; ``inverse`` is its adjoint.
    """
    x = np.asarray(state, dtype=np.complex128)
    if x.size == 0 or N < 1:
        raise ValueError("qft needs a non-empty state")
    if x.shape[0] != N:
        raise ValueError(f"state has length {x.shape[0]}, expected {N}")
    # numpy's fft uses exp(-2 pi i jk/N); our forward sign is the opposite
    if direction == "forward":
        return np.fft.ifft(x, axis=0, norm="ortho")
    if direction == "inverse":
        return np.fft.fft(x, axis=0, norm="ortho")
    raise ValueError(f"unknown direction {direction!r}")


def _walsh_hadamard(x: np.ndarray, axis: int) -> np.ndarray:
    x0 = np.take(x, 0, axis=axis)
    x1 = np.take(x, 1, axis=axis)
    return np.stack([x0 + x1, x0 - x1], axis=axis) / np.sqrt(2.0)


def cos_turn(r, N: int) -> np.ndarray:
    """``cos(2 pi r / N)`` with exact values at quarter turns."""
    r = np.asarray(r, dtype=np.int64) % N
    c = np.cos(2.0 * np.pi * r / N)
    four_r = 4 * r
    c = np.where(r == 0, 1.0, c)
    c = np.where(2 * r == N, -1.0, c)
    c = np.where((four_r == N) | (four_r == 3 * N), 0.0, c)
    return c


class SampleOutcome(NamedTuple):
    a: int
    b: int


@dataclass(frozen=True)
class OutcomeDistribution:
    """Probabilities ``probs[b, a]`` of measuring ``(a, b)``."""

    N: int
    probs: np.ndarray

    def __post_init__(self):
        p = np.asarray(self.probs, dtype=np.float64)
        if p.shape != (2, self.N):
            raise ValueError(f"probs must have shape (2, {self.N})")
        if np.any(p < 0) or abs(p.sum() - 1.0) > 1e-10:
            raise ValueError("not a probability distribution")
        p.setflags(write=False)
        object.__setattr__(self, "probs", p)

    def __getitem__(self, outcome) -> float:
        a, b = outcome
        return float(self.probs[b, a])

    def prob(self, a: int, b: int) -> float:
        return self[(a, b)]

    def flat(self) -> np.ndarray:
        """Probabilities in b-major order."""
        return self.probs.reshape(-1)

    def as_dict(self) -> dict[tuple[int, int], float]:
        return {(a, b): float(self.probs[b, a]) for b in (0, 1) for a in range(self.N)}

    def branch_mass(self, b: int) -> float:
        return float(self.probs[b].sum())

    def total_variation(self, other: "OutcomeDistribution") -> float:
        return 0.5 * float(np.abs(self.probs - other.probs).sum())


@dataclass
class QuantumState:
    """Dense amplitudes indexed ``[a, b, r]``."""

    N: int
    range_size: int
    amplitudes: np.ndarray
    stage_norms: list[float] = field(default_factory=list)

    def norm(self) -> float:
        return float(np.sqrt(np.sum(np.abs(self.amplitudes) ** 2)))

    def outcome_distribution(self) -> OutcomeDistribution:
        p = np.sum(np.abs(self.amplitudes) ** 2, axis=2)  # [a, b]
        p = p / p.sum()
        return OutcomeDistribution(self.N, p.T.copy())


def simulate_circuit(f: DihedralFunction) -> QuantumState:
    """Run the circuit densely without charging a query.

    Reads the oracle table once (``2N`` simulation reads).  The oracle
    unitary acts as ``|a,b,r> -> |a,b,r + idx(gamma(a,b)) mod |R|>``, with
    labels numbered by first appearance.
    """
    N = f.N
    table = f.peek_table()
    _, first, inv = np.unique(table, return_index=True, return_inverse=True)
    # renumber by first appearance so the numbering is independent of label values
    order = np.argsort(np.argsort(first))
    label_idx = order[inv].reshape(2, N).T  # [a, b]
    R = len(first)
    if N * 2 * R > amplitude_cap():
        raise ResourceCapError(f"{N}*2*{R} amplitudes exceed cap {amplitude_cap()}")

    norms = []
    psi = np.zeros((N, 2, R), dtype=np.complex128)
    psi[0, 0, 0] = 1.0
    norms.append(_norm(psi))

    psi = qft(N, "inverse", psi)
    psi = _walsh_hadamard(psi, axis=1)
    norms.append(_norm(psi))

    r = np.arange(R)
    target = (r[None, None, :] + label_idx[:, :, None]) % R
    shifted = np.zeros_like(psi)
    np.put_along_axis(shifted, target, psi, axis=2)
    psi = shifted
    norms.append(_norm(psi))

    psi = qft(N, "forward", psi)
    psi = _walsh_hadamard(psi, axis=1)
    norms.append(_norm(psi))
    return QuantumState(N, R, psi, norms)


def _norm(psi: np.ndarray) -> float:
    return float(np.sqrt(np.sum(np.abs(psi) ** 2)))


def run_circuit(f: DihedralFunction) -> QuantumState:
    """One application of the experiment; counts as one evaluation of ``f``."""
    state = simulate_circuit(f)
    f.charge(1)
    return state


def closed_form_distribution(N: int, k0=TRIVIAL) -> OutcomeDistribution:
    """Outcome law for hidden subgroup ``{(0,0),(k0,1)}``, trivial H, or the half turn."""
    if k0 is None or k0 == TRIVIAL:
        return OutcomeDistribution(N, np.full((2, N), 1.0 / (2 * N)))
    if k0 == HALF_TURN:
        if N % 2:
            raise ValueError("the half turn needs even N")
        # coset {(a,b),(a+N/2,b)} contributes w^(a a') (1 + (-1)^a')
        row = np.where(np.arange(N) % 2 == 0, 1.0 / N, 0.0)
        return OutcomeDistribution(N, np.stack([row, row]))
    if not 0 <= k0 < N:
        raise ValueError(f"k0 must lie in [0, {N})")
    a = np.arange(N)
    c = cos_turn(k0 * a, N)
    # cos^2(x/2) = (1 + cos x)/2
    return OutcomeDistribution(N, np.stack([(1 + c) / (2 * N), (1 - c) / (2 * N)]))


@dataclass(frozen=True)
class SampleSet:
    N: int
    a: np.ndarray
    b: np.ndarray
    seed: int
    backend: str

    def __len__(self) -> int:
        return len(self.a)

    @property
    def outcomes(self) -> list[SampleOutcome]:
        return [SampleOutcome(int(x), int(y)) for x, y in zip(self.a, self.b)]

    def branch(self, b: int) -> np.ndarray:
        """First-register values of the outcomes whose second register is ``b``."""
        return self.a[self.b == b]


def inverse_cdf(p: np.ndarray, u) -> np.ndarray:
    """Map uniforms ``u`` in [0, 1) to indices of ``p``; zero-mass entries are never hit."""
    cdf = np.cumsum(p)
    idx = np.searchsorted(cdf, np.asarray(u) * cdf[-1], side="right")
    # u*total can round up to total
    return np.minimum(idx, np.flatnonzero(p)[-1])


def draw_samples(dist: OutcomeDistribution, m: int, seed, backend: str = CLOSED_FORM) -> SampleSet:
    """``m`` independent inverse-CDF draws over the b-major outcome order."""
    if m < 0:
        raise ValueError("m must be non-negative")
    rng = as_rng(seed)
    idx = inverse_cdf(dist.flat(), rng.random(m))
    return SampleSet(dist.N, idx % dist.N, idx // dist.N, rng.seed, backend)


def conditional_z_distribution(dist: OutcomeDistribution, branch: int) -> np.ndarray:
    """Law of ``a`` given ``b == branch``, normalised from the joint law."""
    row = dist.probs[branch]
    total = row.sum()
    if total <= 0:
        raise EmptyBranchError(f"branch {branch} has zero probability")
    return row / total


def order_two_structure(f: DihedralFunction):
    """Detect the hidden subgroup shape from the table (simulation cost only).

    Returns ``"trivial"``, ``"half_turn"``, an integer ``k0`` for
    ``{(0,0),(k0,1)}``, or None when H has order above two.
    """
    N = f.N
    t = f.peek_table()
    rot, ref = t[:N], t[N:]
    if len(np.unique(t)) == 2 * N:
        return TRIVIAL
    if len(np.unique(t)) != N:
        return None
    hits = np.flatnonzero(ref == t[0])
    if len(hits) == 1 and len(np.unique(rot)) == N:
        k0 = int(hits[0])
        # coset of (a,0) is {(a,0), (a+k0,1)}
        if np.array_equal(rot, ref[(np.arange(N) + k0) % N]):
            return k0
        return None
    if len(hits) == 0 and N % 2 == 0:
        shift = (np.arange(N) + N // 2) % N
        if np.array_equal(rot, rot[shift]) and np.array_equal(ref, ref[shift]):
            return HALF_TURN
    return None


class QuantumExperiment:
    """Repeatable experiment on ``f``; each shot charges one evaluation.

    The outcome law is computed once.  The closed-form backend falls back to
    dense simulation when the table is not of order-at-most-2 shape.
    """

    def __init__(self, f: DihedralFunction, backend: str = CLOSED_FORM):
        if backend not in BACKENDS:
            raise ValueError(f"unknown backend {backend!r}")
        self.f = f
        self.backend = backend
        self.structure = None
        if backend == CLOSED_FORM:
            self.structure = order_two_structure(f)
        if self.structure is not None:
            self.distribution = closed_form_distribution(f.N, self.structure)
        else:
            self.distribution = simulate_circuit(f).outcome_distribution()

    def run(self, m: int, rng) -> SampleSet:
        rng = as_rng(rng)
        self.f.charge(m)
        return draw_samples(self.distribution, m, rng.spawn("shots"), self.backend)


def write_samples(samples: SampleSet, csv_path, k0=TRIVIAL) -> None:
    """CSV ``a,b`` per outcome plus a JSON sidecar ``<csv_path>.json``."""
    with open(csv_path, "w", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(["a", "b"])
        w.writerows(zip(samples.a.tolist(), samples.b.tolist()))
    meta = {
        "N": samples.N,
        "k0_or_trivial": k0,
        "backend": samples.backend,
        "seed": samples.seed,
        "m": len(samples),
    }
    with open(f"{csv_path}.json", "w") as fh:
        json.dump(meta, fh, sort_keys=True)


def read_samples(csv_path) -> SampleSet:
    with open(f"{csv_path}.json") as fh:
        meta = json.load(fh)
    with open(csv_path, newline="") as fh:
        rows = list(csv.DictReader(fh))
    a = np.array([int(r["a"]) for r in rows], dtype=np.int64)
    b = np.array([int(r["b"]) for r in rows], dtype=np.int64)
    return SampleSet(meta["N"], a, b, meta["seed"], meta["backend"])
