import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from dihedral_hsp.peaks import (
    CONSISTENT,
    COS_MIN,
    INCONSISTENT,
    SIN_MAX,
    EmptySampleError,
    HoeffdingParams,
    exact_mean_cos,
    frequency_sums,
    hoeffding_bound,
    peak_find,
    single_point_test,
)
from dihedral_hsp.sampler import closed_form_distribution, conditional_z_distribution, draw_samples


def test_peak_find_examples():
    assert peak_find([0, 2, 2, 0], 4).k_tilde == 2
    assert peak_find([0, 0, 0], 8).k_tilde == 1  # every k ties; smallest wins
    with pytest.raises(EmptySampleError):
        peak_find([], 8)
    with pytest.raises(ValueError):
        peak_find([1], 1)
    with pytest.raises(ValueError):
        peak_find([1], 8, variant="median")


@settings(max_examples=100, deadline=None)
@given(st.integers(2, 40), st.lists(st.integers(0, 200), min_size=1, max_size=60))
def test_frequency_sums_match_loop(N, z):
    for kind, fn in (("cos", math.cos), ("sin", math.sin)):
        got = frequency_sums(z, N, kind=kind)
        for i, k in enumerate(range(1, N // 2 + 1)):
            ref = sum(fn(2 * math.pi * k * x / N) for x in z)
            assert math.isclose(got[i], ref, abs_tol=1e-9)


@settings(max_examples=100, deadline=None)
@given(st.integers(2, 40), st.lists(st.integers(0, 200), min_size=1, max_size=60))
def test_peak_find_is_brute_force_argmax(N, z):
    def score(k):
        return sum(math.cos(2 * math.pi * k * x / N) for x in z)

    res = peak_find(z, N)
    best = max(score(k) for k in range(1, N // 2 + 1))
    tol = 1e-9 * len(z)
    assert score(res.k_tilde) >= best - tol
    # ties within tolerance go to the smallest k
    assert all(score(k) < best - tol + 1e-10 for k in range(1, res.k_tilde))


def test_branch_one_variants():
    # sin^2 law for k0=3 at N=16: cos_min recovers it
    z = draw_samples(closed_form_distribution(16, 3), 4000, 1).branch(1)
    assert peak_find(z, 16, COS_MIN, branch=1).k_tilde == 3
    res = peak_find(z, 16, SIN_MAX, branch=1)
    assert 1 <= res.k_tilde <= 8 and res.branch == 1


def test_single_point_test():
    z = [0] * 10
    assert single_point_test(z, 3, 8) == CONSISTENT
    assert single_point_test([2, 6], 2, 8) == INCONSISTENT
    with pytest.raises(ValueError):
        single_point_test(z, 0, 8)


def test_hoeffding():
    p = HoeffdingParams(m=64, alpha=0.25)
    assert math.isclose(hoeffding_bound(p), math.exp(-64 / 32))
    assert math.isclose(hoeffding_bound(HoeffdingParams(10, 0.1, 0, 1)), math.exp(-0.2))
    with pytest.raises(ValueError):
        hoeffding_bound(HoeffdingParams(10, 0.1, 1, 1))
    with pytest.raises(ValueError):
        HoeffdingParams(-1, 0.1)
    with pytest.raises(ValueError):
        HoeffdingParams(1, 0.0)


@pytest.mark.parametrize("N", [5, 8, 12, 17])
def test_exact_mean_cos_cases(N):
    for k0 in range(1, N):
        if 2 * k0 == N:
            continue
        law = conditional_z_distribution(closed_form_distribution(N, k0), 0)
        for k in range(N):
            if k == 0:
                want = 1.0
            elif k in (k0, N - k0):
                want = 0.5
            else:
                want = 0.0
            assert abs(exact_mean_cos(law, k) - want) < 1e-12


def test_peak_success_on_exact_samples():
    N, k0 = 32, 5
    law = conditional_z_distribution(closed_form_distribution(N, k0), 0)
    hits = 0
    for seed in range(50):
        d = closed_form_distribution(N, k0)
        z = draw_samples(d, 2 * math.ceil(64 * math.log(N)), seed).branch(0)
        hits += peak_find(z, N).k_tilde == k0
    assert hits >= 48
    assert np.isclose(law.sum(), 1)
