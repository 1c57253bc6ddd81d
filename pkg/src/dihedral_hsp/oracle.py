"""Black-box hidden functions on D_N with exact evaluation counting.

A hidden function is constant on each left coset of a hidden subgroup H and
takes distinct values on distinct cosets.  Solvers only see
:meth:`DihedralFunction.evaluate` (counted).  Quantum-simulation backends
additionally read the table through :meth:`DihedralFunction.peek`, which is
tallied separately as simulation cost and never counts as a query.  The
hidden subgroup itself is only reachable through :func:`reveal_hidden`,
which the test harness uses for ground truth.
"""

from __future__ import annotations

import threading
from typing import Iterable, TextIO

import numpy as np

from .group import (
    DihedralGroup,
    GroupElement,
    IDENTITY,
    Subgroup,
    closure,
    subgroup_signature,
)
from .rng import derive_seed, mix64

TABLE_LIMIT = 2**16
DUMP_HEADER = "dihedral-oracle v1"


class PromiseError(ValueError):
    pass


class Counter:
    """Integer counter that tolerates concurrent increments."""

    def __init__(self):
        self._value = 0
        self._lock = threading.Lock()

    def add(self, n: int = 1) -> None:
        with self._lock:
            self._value += n

    @property
    def value(self) -> int:
        return self._value


class DihedralFunction:
    """Common interface for functions ``D_N -> labels``.

    Subclasses implement ``_lookup``.  ``queries`` counts black-box
    evaluations and is shared with every derived view (restriction,
    quotient), so a solver's total cost is read off the root function.
    """

    group: DihedralGroup

    def __init__(self, group: DihedralGroup, queries: Counter, sim_reads: Counter):
        self.group = group
        self._queries = queries
        self._sim_reads = sim_reads

    @property
    def N(self) -> int:
        return self.group.N

    @property
    def eval_count(self) -> int:
        return self._queries.value

    @property
    def sim_reads(self) -> int:
        return self._sim_reads.value

    def evaluate(self, g) -> int:
        self._queries.add()
        return self._lookup(g[0] % self.N, g[1])

    __call__ = evaluate

    def charge(self, n: int = 1) -> None:
        """Record ``n`` evaluations consumed by quantum experiments."""
        self._queries.add(n)

    def peek(self, g) -> int:
        """Table read for the simulator; not a query."""
        self._sim_reads.add()
        return self._lookup(g[0] % self.N, g[1])

    def peek_table(self) -> np.ndarray:
        """All ``2N`` values in index order ``b*N + a`` (simulation cost ``2N``)."""
        self._sim_reads.add(2 * self.N)
        return self._full_table()

    def _full_table(self) -> np.ndarray:
        return np.array(
            [self._lookup(a, b) for b in (0, 1) for a in range(self.N)], dtype=np.uint64
        )

    def _lookup(self, a: int, b: int) -> int:
        raise NotImplementedError


class HiddenFunction(DihedralFunction):
    """Labels = seeded bijective scramble of the canonical coset index."""

    def __init__(self, group: DihedralGroup, hidden: Subgroup, label_key: int):
        super().__init__(group, Counter(), Counter())
        self._hidden = hidden
        self._key = label_key
        self._d, self._r = subgroup_signature(hidden.elements, group.N)
        self._table = None
        if group.N <= TABLE_LIMIT:
            self._table = self._compute_table()

    def _canonical_index(self, a, b):
        d, r = self._d, self._r
        if r is None:
            return b * self.N + a % d
        # with reflections in H the minimal coset element is always a rotation
        return (a - r * b) % d

    def _scramble(self, idx: int) -> int:
        return mix64(idx ^ self._key)

    def _compute_table(self) -> np.ndarray:
        N = self.N
        a = np.tile(np.arange(N, dtype=np.int64), 2)
        b = np.repeat(np.array([0, 1], dtype=np.int64), N)
        idx = self._canonical_index(a, b)
        return np.array([self._scramble(int(i)) for i in idx], dtype=np.uint64)

    def _lookup(self, a: int, b: int) -> int:
        if self._table is not None:
            return int(self._table[b * self.N + a])
        return self._scramble(int(self._canonical_index(a, b)))

    def _full_table(self) -> np.ndarray:
        if self._table is not None:
            return self._table.copy()
        return super()._full_table()


class TableFunction(DihedralFunction):
    """A function given by an explicit table, e.g. replayed from a dump."""

    def __init__(self, group: DihedralGroup, table: Iterable[int]):
        super().__init__(group, Counter(), Counter())
        self._table = np.asarray(list(table), dtype=np.uint64)
        if self._table.shape != (group.order,):
            raise ValueError("table must have 2N entries")

    def _lookup(self, a: int, b: int) -> int:
        return int(self._table[b * self.N + a])

    def _full_table(self) -> np.ndarray:
        return self._table.copy()


class QuotientFunction(DihedralFunction):
    """``gamma_2(j, b) = gamma(j, b)`` on D_M, sharing the parent counters."""

    def __init__(self, parent: DihedralFunction, M: int):
        super().__init__(DihedralGroup(M), parent._queries, parent._sim_reads)
        self.parent = parent

    def _lookup(self, a: int, b: int) -> int:
        return self.parent._lookup(a, b)


class CyclicFunction:
    """Restriction ``gamma_1(x) = gamma(x, 0)`` to the rotations Z_N."""

    def __init__(self, parent: DihedralFunction):
        self.parent = parent
        self.N = parent.N

    @property
    def eval_count(self) -> int:
        return self.parent.eval_count

    def evaluate(self, x: int) -> int:
        return self.parent.evaluate((x % self.N, 0))

    __call__ = evaluate

    def peek(self, x: int) -> int:
        return self.parent.peek((x % self.N, 0))

    def peek_table(self) -> np.ndarray:
        self.parent._sim_reads.add(self.N)
        return np.array([self.parent._lookup(x, 0) for x in range(self.N)], dtype=np.uint64)


def _check_subgroup(H: Subgroup, group: DihedralGroup) -> None:
    """O(|H|) exact subgroup test via the (d, r) classification."""
    if H.parent != group:
        raise PromiseError("subgroup belongs to a different group")
    elems = set(H.elements)
    if IDENTITY not in elems or any(not group.contains(g) for g in elems):
        raise PromiseError("H is not a subgroup: missing identity or invalid element")
    d, r = subgroup_signature(H.elements, group.N)
    expected = group.N // d * (1 if r is None else 2)
    consistent = all((g.a % d == 0) if g.b == 0 else (g.a % d == r) for g in elems)
    if len(elems) != expected or not consistent:
        raise PromiseError("H is not closed under multiplication")


def build_hidden_function(group: DihedralGroup, H: Subgroup, labeling: int = 0) -> HiddenFunction:
    """Hidden function with hidden subgroup ``H``.

    ``labeling`` seeds the label scramble; different seeds give different
    labels but the same coset partition.
    """
    _check_subgroup(H, group)
    return HiddenFunction(group, H, derive_seed(labeling, "labels", group.N))


def reveal_hidden(f: DihedralFunction) -> Subgroup:
    """Ground truth for tests and the harness; never called by solvers."""
    if isinstance(f, HiddenFunction):
        return f._hidden
    table = f._full_table()
    e = table[0]
    return closure(
        [GroupElement(i % f.N, i // f.N) for i in np.flatnonzero(table == e)], f.group
    )


def evaluate(f: DihedralFunction, g) -> int:
    return f.evaluate(g)


def verify_promise(f: DihedralFunction, H: Subgroup) -> bool:
    """True iff ``f`` is constant on each left coset of ``H`` and distinct across them.

    Reads the table without touching the query counter.
    """
    grp = f.group
    table = f._full_table()
    seen_labels: set[int] = set()
    done = set()
    for g in grp.elements():
        if g in done:
            continue
        coset = frozenset(grp.multiply(g, h) for h in H.elements)
        values = {int(table[grp.index(x)]) for x in coset}
        if len(values) != 1:
            return False
        v = values.pop()
        if v in seen_labels:
            return False
        seen_labels.add(v)
        done |= coset
    return True


def restrict_to_cyclic(f: DihedralFunction) -> CyclicFunction:
    return CyclicFunction(f)


def rotation_order(X1: Iterable[GroupElement], N: int) -> int:
    """``M = min{1 <= j <= N : (j,0) in <X1>}`` for rotations ``X1``."""
    X1 = list(X1)
    if any(g[1] != 0 for g in X1):
        raise ValueError("X1 must contain rotations only")
    d, _ = subgroup_signature(X1, N)
    return d


def quotient_function(f: DihedralFunction, X1) -> QuotientFunction:
    """View ``f`` as a function on ``D_N / <X1>`` which is isomorphic to D_M."""
    gens = list(X1.generators if isinstance(X1, Subgroup) else X1)
    M = rotation_order(gens, f.N)
    return QuotientFunction(f, M)


def quotient_image(H: Subgroup, M: int) -> Subgroup:
    """Image of ``H`` under ``(a, b) -> (a mod M, b)``."""
    target = DihedralGroup(M)
    return closure([GroupElement(g.a % M, g.b) for g in H.generators or H.elements], target)


def write_oracle_dump(f: DihedralFunction, fh: TextIO) -> None:
    """Text dump: header line, then ``a b label`` per element (b-major)."""
    table = f._full_table()
    fh.write(f"{DUMP_HEADER} N={f.N}\n")
    for i, g in enumerate(f.group.elements()):
        fh.write(f"{g.a} {g.b} {int(table[i])}\n")


def read_oracle_dump(fh: TextIO) -> TableFunction:
    header = fh.readline().strip()
    if not header.startswith(DUMP_HEADER + " N="):
        raise ValueError(f"not an oracle dump: {header!r}")
    N = int(header.split("N=")[1])
    group = DihedralGroup(N)
    table = [None] * group.order
    for line in fh:
        if not line.strip():
            continue
        a, b, label = (int(x) for x in line.split())
        table[group.index(group.element(a, b))] = label
    if any(v is None for v in table):
        raise ValueError("oracle dump is missing elements")
    return TableFunction(group, table)
