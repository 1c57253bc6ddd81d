"""Exact arithmetic in the dihedral group D_N = Z_N x| Z_2.

Elements are pairs ``(a, b)`` with ``a`` a residue mod N and ``b`` a bit.
``(a, 0)`` is the rotation by ``a`` and ``(a, 1)`` a reflection.  The product is

    (a1, b1) (a2, b2) = (a1 + (-1)**b1 * a2 mod N, b1 xor b2)

All arithmetic is integer arithmetic; no floating point is involved anywhere
in this module.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from math import gcd
from typing import Iterable, NamedTuple


class GroupElement(NamedTuple):
    a: int
    b: int


IDENTITY = GroupElement(0, 0)


def element_key(g: GroupElement) -> tuple[int, int]:
    """Sort key giving the (b, a) lexicographic order used for canonical forms."""
    return (g.b, g.a)


@dataclass(frozen=True)
class DihedralGroup:
    """The dihedral group of order ``2N``."""

    N: int

    def __post_init__(self):
        if not isinstance(self.N, int) or self.N < 1:
            raise ValueError(f"N must be a positive integer, got {self.N!r}")

    @property
    def order(self) -> int:
        return 2 * self.N

    @property
    def identity(self) -> GroupElement:
        return IDENTITY

    def element(self, a: int, b: int = 0) -> GroupElement:
        """Build an element, reducing ``a`` mod N."""
        if b not in (0, 1):
            raise ValueError(f"b must be 0 or 1, got {b!r}")
        return GroupElement(a % self.N, b)

    def elements(self) -> list[GroupElement]:
        """All ``2N`` elements in (b, a) order, i.e. index ``b*N + a``."""
        return [GroupElement(a, b) for b in (0, 1) for a in range(self.N)]

    def index(self, g: GroupElement) -> int:
        return g.b * self.N + g.a

    def contains(self, g) -> bool:
        return (
            isinstance(g, tuple)
            and len(g) == 2
            and 0 <= g[0] < self.N
            and g[1] in (0, 1)
        )

    def multiply(self, g1: GroupElement, g2: GroupElement) -> GroupElement:
        return multiply(g1, g2, self)

    def inverse(self, g: GroupElement) -> GroupElement:
        return inverse(g, self)


def multiply(g1: GroupElement, g2: GroupElement, group: DihedralGroup) -> GroupElement:
    a1, b1 = g1
    a2, b2 = g2
    a = a1 - a2 if b1 else a1 + a2
    return GroupElement(a % group.N, b1 ^ b2)


def inverse(g: GroupElement, group: DihedralGroup) -> GroupElement:
    # reflections are involutions
    if g[1]:
        return GroupElement(g[0], 1)
    return GroupElement(-g[0] % group.N, 0)


@dataclass(frozen=True)
class Subgroup:
    """A subgroup of ``parent``, stored with generators and full element set.

    ``elements`` is sorted in (b, a) order.  Construct through :func:`closure`
    (or :func:`subgroup_from_elements`) so that the closure invariant holds.
    """

    parent: DihedralGroup
    elements: tuple[GroupElement, ...]
    generators: tuple[GroupElement, ...] = field(default=())

    def __post_init__(self):
        object.__setattr__(self, "_members", frozenset(self.elements))

    @property
    def order(self) -> int:
        return len(self.elements)

    def __contains__(self, g) -> bool:
        return tuple(g) in self._members

    def __len__(self) -> int:
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Subgroup):
            return NotImplemented
        return self.parent == other.parent and self._members == other._members

    def __hash__(self) -> int:
        return hash((self.parent, self._members))

    def rotations(self) -> tuple[GroupElement, ...]:
        return tuple(g for g in self.elements if g.b == 0)

    def is_closed(self) -> bool:
        """Brute-force closure check (identity, products, inverses)."""
        grp = self.parent
        if IDENTITY not in self._members:
            return False
        for g in self.elements:
            if grp.inverse(g) not in self._members:
                return False
            for h in self.elements:
                if grp.multiply(g, h) not in self._members:
                    return False
        return True

    def describe(self) -> str:
        d, r = subgroup_signature(self.generators or self.elements, self.parent.N)
        rot = f"<({d % self.parent.N},0)>"
        return rot if r is None else f"<({d % self.parent.N},0),({r},1)>"


def closure(generators: Iterable[GroupElement], group: DihedralGroup) -> Subgroup:
    """Smallest subgroup of ``group`` containing ``generators``."""
    gens = tuple(group.element(*g) for g in generators)
    seen = {IDENTITY}
    frontier = [IDENTITY]
    while frontier:
        nxt = []
        for x in frontier:
            for g in gens:
                y = multiply(x, g, group)
                if y not in seen:
                    seen.add(y)
                    nxt.append(y)
        frontier = nxt
    # finite group: right multiplication by generators reaches the whole subgroup
    return Subgroup(group, tuple(sorted(seen, key=element_key)), gens)


def subgroup_from_elements(elements: Iterable[GroupElement], group: DihedralGroup) -> Subgroup:
    """Wrap an explicit element set; raises ``ValueError`` if it is not a subgroup."""
    elems = tuple(sorted({group.element(*g) for g in elements}, key=element_key))
    sub = Subgroup(group, elems, elems)
    if not sub.is_closed():
        raise ValueError("element set is not closed under multiplication")
    return sub


def trivial_subgroup(group: DihedralGroup) -> Subgroup:
    return Subgroup(group, (IDENTITY,), ())


def reflection_subgroup(k0: int, group: DihedralGroup) -> Subgroup:
    """The order-2 subgroup ``{(0,0), (k0,1)}``."""
    return closure([GroupElement(k0 % group.N, 1)], group)


def enumerate_order_two_subgroups(group: DihedralGroup) -> list[Subgroup]:
    """All subgroups of order two: N reflection subgroups, plus ``{(0,0),(N/2,0)}`` for even N."""
    subs = [reflection_subgroup(k, group) for k in range(group.N)]
    if group.N % 2 == 0 and group.N > 1:
        subs.append(closure([GroupElement(group.N // 2, 0)], group))
    return subs


def divisors(n: int) -> list[int]:
    return [d for d in range(1, n + 1) if n % d == 0]


def subgroup_signature(generators: Iterable[GroupElement], N: int) -> tuple[int, int | None]:
    """Canonical ``(d, r)`` with ``<gens> = <(d,0)>`` or ``<(d,0),(r,1)>``.

    ``d`` divides N (``d == N`` for no rotations) and ``0 <= r < d``; ``r`` is
    None when the subgroup has no reflections.  Uses that the product of two
    reflections ``(r1,1)(r2,1)`` is the rotation ``(r1-r2, 0)``.
    """
    d = N
    r0 = None
    for a, b in generators:
        if b == 0:
            d = gcd(d, a)
        elif r0 is None:
            r0 = a
        else:
            d = gcd(d, a - r0)
    return d, (None if r0 is None else r0 % d)


def enumerate_subgroups(group: DihedralGroup) -> list[Subgroup]:
    """Every subgroup of D_N.

    Uses the classification: ``<(d,0)>`` for each divisor d of N, and
    ``<(d,0),(r,1)>`` for each divisor d and ``0 <= r < d``.  There are
    ``tau(N) + sigma(N)`` of them.
    """
    N = group.N
    subs = []
    for d in divisors(N):
        subs.append(closure([GroupElement(d % N, 0)] if d < N else [], group))
    for d in divisors(N):
        for r in range(d):
            gens = [GroupElement(r, 1)]
            if d < N:
                gens.insert(0, GroupElement(d, 0))
            subs.append(closure(gens, group))
    return subs


def coset_representative(g: GroupElement, H: Subgroup) -> GroupElement:
    """Minimum of the left coset ``gH`` under (b, a) order."""
    grp = H.parent
    return min((multiply(g, h, grp) for h in H.elements), key=element_key)


def left_coset_label(g: GroupElement, H: Subgroup) -> int:
    """Canonical integer id of ``gH``: the index ``b*N + a`` of its minimal element."""
    return H.parent.index(coset_representative(g, H))


def coset_representative_fast(g: GroupElement, N: int, d: int, r: int | None) -> GroupElement:
    """Canonical representative of ``gH`` for ``H`` with signature ``(d, r)``.

    Avoids enumerating H, for use with large N.  Agrees with
    :func:`coset_representative`.
    """
    a, b = g
    # gH contains (a + j*d, b) for all j, and if r is set also (a + (-1)**b*(r + j*d), 1-b)
    same = GroupElement(a % d, b)
    if r is None:
        return same
    other_a = (a - r) % d if b else (a + r) % d
    other = GroupElement(other_a, 1 - b)
    return min(same, other, key=element_key)
