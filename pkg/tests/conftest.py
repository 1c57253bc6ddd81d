import cmath
import itertools
import math

import numpy as np
import pytest

from dihedral_hsp.group import DihedralGroup, GroupElement


def as_permutation(g, N):
    """D_N acting on polygon vertices: (a, b) sends x to a + (-1)^b x."""
    a, b = g
    return tuple((a + (-x if b else x)) % N for x in range(N))


def naive_closure(gens, N):
    """Multiply everything by everything until nothing new appears."""
    grp = DihedralGroup(N)
    elems = {GroupElement(0, 0)} | {GroupElement(*g) for g in gens}
    while True:
        new = {grp.multiply(x, y) for x, y in itertools.product(elems, repeat=2)} | elems
        if new == elems:
            return frozenset(elems)
        elems = new


def brute_force_outcome_law(f):
    """Measurement law of the circuit from the amplitude formula.

    amp(a', b', r) = 1/(2N) * sum_{(a,b): gamma(a,b)=r} w^(a a') (-1)^(b b').
    """
    N = f.N
    table = f._full_table()
    fibers = {}
    for b in (0, 1):
        for a in range(N):
            fibers.setdefault(int(table[b * N + a]), []).append((a, b))
    P = np.zeros((2, N))
    for a2 in range(N):
        for b2 in (0, 1):
            total = 0.0
            for pts in fibers.values():
                amp = sum(cmath.exp(2j * math.pi * a * a2 / N) * (-1) ** (b * b2) for a, b in pts)
                total += abs(amp / (2 * N)) ** 2
            P[b2, a2] = total
    return P


def dft_matrix(N):
    return np.array([[cmath.exp(2j * math.pi * i * j / N) for i in range(N)] for j in range(N)]) / math.sqrt(N)


@pytest.fixture
def d4():
    return DihedralGroup(4)


# criterion number -> (passed, detail); filled by test_acceptance.py
ACCEPTANCE = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(ACCEPTANCE):
        ok, detail = ACCEPTANCE[n]
        terminalreporter.write_line(f"criterion {n:2d}: {'PASS' if ok else 'FAIL'}  {detail}")
