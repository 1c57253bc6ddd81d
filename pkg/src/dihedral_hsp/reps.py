"""Irreducible representations and the matrix-valued Fourier transform.

For a finite group G with a complete set of unitary irreps, the transform of
``f: G -> C`` at an irrep ``rho`` of dimension ``d`` is

    fhat(rho) = sqrt(d / |G|) * sum_g f(g) rho(g).

For the indicator ``I_H`` of a subgroup the transform is proportional to the
projection ``P_H(rho) = mean_{h in H} rho(h)`` onto the H-fixed vectors, with
factor ``sqrt(d/|G|) * |H|``; for a coset ``sH`` it picks up ``rho(s)`` on the
left.  Everything here is dense and tiny (``d <= 2`` for dihedral groups).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Iterable

import numpy as np

from .group import DihedralGroup, Subgroup


@dataclass(frozen=True)
class CyclicGroup:
    """Z_N with elements ``0..N-1``; same interface as :class:`DihedralGroup`."""

    N: int

    @property
    def order(self) -> int:
        return self.N

    @property
    def identity(self) -> int:
        return 0

    def elements(self) -> list[int]:
        return list(range(self.N))

    def index(self, g: int) -> int:
        return g % self.N

    def multiply(self, g: int, h: int) -> int:
        return (g + h) % self.N


@dataclass(frozen=True)
class Representation:
    label: str
    dim: int
    matrices: np.ndarray  # [element index, d, d]

    def __call__(self, index: int) -> np.ndarray:
        return self.matrices[index]

    def character(self) -> np.ndarray:
        return np.trace(self.matrices, axis1=1, axis2=2)


@dataclass(frozen=True)
class IrrepSet:
    group: object
    irreps: tuple[Representation, ...]

    def __iter__(self):
        return iter(self.irreps)

    def __len__(self) -> int:
        return len(self.irreps)

    def dims(self) -> list[int]:
        return [r.dim for r in self.irreps]

    def sum_of_squares(self) -> int:
        return sum(d * d for d in self.dims())

    def by_label(self, label: str) -> Representation:
        for r in self.irreps:
            if r.label == label:
                return r
        raise KeyError(label)


@dataclass(frozen=True)
class FourierCoefficients:
    labels: tuple[str, ...]
    blocks: tuple[np.ndarray, ...]

    def __getitem__(self, label: str) -> np.ndarray:
        return self.blocks[self.labels.index(label)]

    def norm_squared(self) -> float:
        return float(sum(np.sum(np.abs(b) ** 2) for b in self.blocks))


def _unity(N: int) -> np.ndarray:
    # exact quarter-turn values keep small-N matrices free of round-off
    t = np.arange(N)
    w = np.exp(2j * np.pi * t / N)
    for r in range(N):
        if (4 * r) % N == 0:
            w[r] = 1j ** (4 * r // N)
    return w


def irreps_of_dihedral(group: DihedralGroup) -> IrrepSet:
    """Standard irreps of D_N, in the order trivial, sign, [alt, alt_sign], rho_1, ...

    ``sign(a,b) = (-1)^b``; for even N also ``alt(a,b) = (-1)^a`` and
    ``alt_sign = (-1)^(a+b)``.  For ``1 <= k < N/2``,
    ``rho_k(a,0) = diag(w^ka, w^-ka)`` and ``rho_k(a,1) = antidiag(w^ka, w^-ka)``.
    """
    N = group.N
    elems = group.elements()
    a = np.array([g.a for g in elems])
    b = np.array([g.b for g in elems])
    ones = np.ones(len(elems))

    def one_dim(label, values):
        return Representation(label, 1, np.asarray(values, dtype=np.complex128).reshape(-1, 1, 1))

    irreps = [one_dim("trivial", ones), one_dim("sign", (-1.0) ** b)]
    if N % 2 == 0:
        irreps.append(one_dim("alt", (-1.0) ** a))
        irreps.append(one_dim("alt_sign", (-1.0) ** (a + b)))
    w = _unity(N)
    for k in range(1, (N + 1) // 2):
        mats = np.zeros((len(elems), 2, 2), dtype=np.complex128)
        up, down = w[(k * a) % N], w[(-k * a) % N]
        rot, ref = b == 0, b == 1
        mats[rot, 0, 0], mats[rot, 1, 1] = up[rot], down[rot]
        mats[ref, 0, 1], mats[ref, 1, 0] = up[ref], down[ref]
        irreps.append(Representation(f"rho_{k}", 2, mats))
    return IrrepSet(group, tuple(irreps))


def irreps_of_cyclic(N: int) -> IrrepSet:
    """Characters ``chi_k(x) = w^(kx)`` of Z_N, labelled ``chi_k``."""
    group = CyclicGroup(N)
    w = _unity(N)
    x = np.arange(N)
    irreps = tuple(
        Representation(f"chi_{k}", 1, w[(k * x) % N].reshape(-1, 1, 1)) for k in range(N)
    )
    return IrrepSet(group, irreps)


def _as_vector(f, group) -> np.ndarray:
    if callable(f):
        return np.array([f(g) for g in group.elements()], dtype=np.complex128)
    v = np.asarray(f, dtype=np.complex128)
    if v.shape != (group.order,):
        raise ValueError(f"function must have {group.order} values")
    return v


def fourier_transform(f, gamma: IrrepSet) -> FourierCoefficients:
    """``fhat(rho) = sqrt(d/|G|) sum_g f(g) rho(g)`` for every irrep.

    ``f`` is a callable on group elements or a vector in element-index order.
    """
    G = gamma.group
    v = _as_vector(f, G)
    blocks = tuple(
        np.sqrt(r.dim / G.order) * np.tensordot(v, r.matrices, axes=(0, 0)) for r in gamma
    )
    return FourierCoefficients(tuple(r.label for r in gamma), blocks)


def inverse_fourier(F: FourierCoefficients, gamma: IrrepSet) -> np.ndarray:
    """``f(g) = sum_rho sqrt(d/|G|) tr(rho(g)^* fhat(rho))``."""
    G = gamma.group
    if len(F.blocks) != len(gamma):
        raise ValueError("coefficient count does not match the irrep set")
    out = np.zeros(G.order, dtype=np.complex128)
    for r, block in zip(gamma, F.blocks):
        if block.shape != (r.dim, r.dim):
            raise ValueError(f"block for {r.label} has shape {block.shape}, expected {(r.dim, r.dim)}")
        # tr(A^* B) = sum conj(A) * B
        out += np.sqrt(r.dim / G.order) * np.einsum("gij,ij->g", r.matrices.conj(), block)
    return out


def _indices(H, group) -> list[int]:
    elems = H.elements if isinstance(H, Subgroup) else list(H)
    return [group.index(h) for h in elems]


def projection_PH(rho: Representation, H, group=None) -> np.ndarray:
    """Group average ``(1/|H|) sum_h rho(h)``: the projection onto H-fixed vectors."""
    group = group if group is not None else H.parent
    idx = _indices(H, group)
    return rho.matrices[idx].mean(axis=0)


def indicator(elements: Iterable, group) -> np.ndarray:
    v = np.zeros(group.order, dtype=np.complex128)
    v[[group.index(g) for g in elements]] = 1.0
    return v


def coset(s, H, group) -> list:
    elems = H.elements if isinstance(H, Subgroup) else list(H)
    return [group.multiply(s, h) for h in elems]


def verify_indicator_theorem(H, gamma: IrrepSet, tol: float = 1e-10) -> list[dict]:
    """Check ``Ihat_H(rho) = c * P_H(rho)`` with ``c = sqrt(d/|G|) * |H|``.

    Returns one record per irrep: ``irrep_label, d, scalar, max_deviation,
    ok``.
    """
    G = gamma.group
    elems = H.elements if isinstance(H, Subgroup) else list(H)
    F = fourier_transform(indicator(elems, G), gamma)
    report = []
    for r, block in zip(gamma, F.blocks):
        c = np.sqrt(r.dim / G.order) * len(elems)
        P = projection_PH(r, elems, G)
        dev = float(np.max(np.abs(block - c * P)))
        report.append(
            {"irrep_label": r.label, "d": r.dim, "scalar": float(c), "max_deviation": dev, "ok": dev < tol}
        )
    return report


def coset_fourier(s, H, gamma: IrrepSet) -> FourierCoefficients:
    """Transform of the indicator of the left coset ``sH``."""
    G = gamma.group
    return fourier_transform(indicator(coset(s, H, G), G), gamma)


def verify_coset_corollary(s, H, gamma: IrrepSet, tol: float = 1e-10) -> list[dict]:
    """Check ``Ihat_sH(rho) = rho(s) Ihat_H(rho)`` per irrep."""
    G = gamma.group
    elems = H.elements if isinstance(H, Subgroup) else list(H)
    FsH = coset_fourier(s, elems, gamma)
    FH = fourier_transform(indicator(elems, G), gamma)
    report = []
    for r, lhs, base in zip(gamma, FsH.blocks, FH.blocks):
        dev = float(np.max(np.abs(lhs - r(G.index(s)) @ base)))
        report.append({"irrep_label": r.label, "d": r.dim, "max_deviation": dev, "ok": dev < tol})
    return report


def matrix_coefficient_basis(gamma: IrrepSet) -> tuple[np.ndarray, list[tuple[str, int, int]]]:
    """Columns ``sqrt(d/|G|) rho(g)_ij`` over g, one per ``(rho, i, j)``."""
    G = gamma.group
    cols, labels = [], []
    for r in gamma:
        for i in range(r.dim):
            for j in range(r.dim):
                cols.append(np.sqrt(r.dim / G.order) * r.matrices[:, i, j])
                labels.append((r.label, i, j))
    return np.stack(cols, axis=1), labels


def weak_sampling_distribution(s, H, gamma: IrrepSet) -> dict[tuple[str, int, int], float]:
    """``|c_{rho,i,j}|^2`` for the normalised coset state ``I_sH / sqrt(|H|)``.

    The coefficients are inner products with the orthonormal basis of
    normalised matrix coefficients.
    """
    G = gamma.group
    elems = coset(s, H, G)
    psi = indicator(elems, G) / np.sqrt(len(elems))
    B, labels = matrix_coefficient_basis(gamma)
    c = B.conj().T @ psi
    return {lab: float(abs(x) ** 2) for lab, x in zip(labels, c)}


def block_masses(dist: dict[tuple[str, int, int], float]) -> dict[str, float]:
    out: dict[str, float] = {}
    for (label, _, _), p in dist.items():
        out[label] = out.get(label, 0.0) + p
    return out


def check_irreps(gamma: IrrepSet, tol: float = 1e-12) -> dict:
    """Exhaustive homomorphism / unitarity / inequivalence check."""
    G = gamma.group
    elems = G.elements()
    mult = np.array([[G.index(G.multiply(g, h)) for h in elems] for g in elems])
    hom = unit = 0.0
    for r in gamma:
        M = r.matrices
        prod = np.einsum("gij,hjk->ghik", M, M)
        hom = max(hom, float(np.max(np.abs(prod - M[mult]))))
        eye = np.eye(r.dim)
        unit = max(unit, float(np.max(np.abs(M @ np.conj(np.transpose(M, (0, 2, 1))) - eye))))
    chars = np.array([r.character() for r in gamma])
    # distinct irreducible characters are orthogonal: <chi, chi'> = delta / sum over |G|
    gram = chars.conj() @ chars.T / G.order
    ortho = float(np.max(np.abs(gram - np.eye(len(gamma)))))
    return {
        "sum_of_squares": gamma.sum_of_squares(),
        "order": G.order,
        "homomorphism_error": hom,
        "unitarity_error": unit,
        "character_orthonormality_error": ortho,
        "ok": gamma.sum_of_squares() == G.order and hom < tol and unit < tol and ortho < 1e-10,
    }
