import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from monroe_cc import (ElectionRule, PreferenceProfile, ScoringFunction, brute_force_winners,
                       cc_algo_c, cc_algo_gm, cc_algo_p, cc_algo_p_delta, cc_algo_r, cc_ptas)
from monroe_cc.bounds import cc_p_bound, cc_truncated_bound
from monroe_cc.core import satisfaction_matrix

from conftest import borda, profiles, random_profile


def pointwise_optimal(p, psf, rep):
    sat = satisfaction_matrix(p, psf)
    S = list(rep.committee)
    arr = rep.assignment.as_array()
    return all(sat[v, arr[v]] == sat[v, S].max() for v in range(p.num_voters))


def test_p_example(three_voters):
    rep = cc_algo_p(three_voters, borda(three_voters), 1)
    assert rep.params["x"] == 2
    assert rep.committee == (0,) and rep.l1 == 5


@settings(max_examples=80, deadline=None)
@given(profiles(n=(1, 8), m=(1, 6)), st.data())
def test_algorithms_on_small(p, data):
    K = data.draw(st.integers(1, p.num_alternatives))
    psf = borda(p)
    opt = brute_force_winners(p, psf, ElectionRule.chamberlin_courant(K)).l1
    reps = [cc_algo_gm(p, psf, K), cc_algo_c(p, psf, K, d=3), cc_algo_p(p, psf, K),
            cc_algo_r(p, psf, K, samples=4, seed=0)]
    for rep in reps:
        assert rep.l1 <= opt
        assert len(rep.committee) == K
        assert pointwise_optimal(p, psf, rep)
    assert reps[0].l1 >= (1 - 1 / math.e) * opt
    assert cc_algo_c(p, psf, K, d=1).l1 == reps[0].l1
    if K == 1:
        assert reps[0].l1 == opt


@settings(max_examples=60, deadline=None)
@given(profiles(n=(1, 15), m=(2, 12)), st.data())
def test_p_bound(p, data):
    K = data.draw(st.integers(1, p.num_alternatives))
    n, m = p.num_voters, p.num_alternatives
    assert cc_algo_p(p, borda(p), K).l1 >= cc_p_bound(K) * n * (m - 1) - 1e-9


def test_truncated_window_bound(rng):
    for _ in range(50):
        n, m = int(rng.integers(5, 40)), int(rng.integers(4, 15))
        K = int(rng.integers(1, m))
        Q = int(rng.integers(1, m))
        p = random_profile(rng, n, m)
        assert cc_algo_p(p, borda(p), K, x_override=Q).l1 >= \
            cc_truncated_bound(m, K, Q) * n * (m - 1) - 1e-9


def test_full_committee(rng):
    p = random_profile(rng, 10, 5)
    for f in (cc_algo_gm, cc_algo_c, cc_algo_p):
        assert f(p, borda(p), 5).l1 == 40
    assert cc_algo_r(p, borda(p), 5, samples=1).l1 == 40


def test_r_single_sample_mean():
    m, K, n = 10, 3, 50
    rng = np.random.default_rng(9)
    vals = []
    for seed in range(300):
        p = random_profile(rng, n, m)
        vals.append(cc_algo_r(p, borda(p), K, samples=1, seed=seed).l1 / (n * (m - 1)))
    assert np.mean(vals) >= 1 - 1 / (K + 1) - 0.05


def test_p_delta(rng):
    p = random_profile(rng, 60, 100)
    rep = cc_algo_p_delta(p, borda(p), 10, 0.1)
    assert rep.params["x"] == 24
    assert rep.algorithm == "cc-p-delta"
    assert rep.params["l_min_delta"] >= rep.l_min
    assert cc_algo_p_delta(p, borda(p), 10, 0.999).params["x"] == 1
    assert cc_algo_p_delta(p, borda(p), 10, math.exp(-10) * 1.0000001).params["x"] == 100


def test_ptas_branches(rng):
    p = random_profile(rng, 12, 8)
    assert cc_ptas(p, borda(p), 3, 0.2).params["branch"] == "exact"
    big = random_profile(rng, 30, 200)
    rep = cc_ptas(big, borda(big), 150, 0.5)
    assert rep.params["branch"] == "covering"
    assert rep.l1 >= 0.5 * 30 * 199


def test_invalid_arguments(rng):
    p = random_profile(rng, 4, 4)
    with pytest.raises(ValueError):
        cc_algo_p(p, borda(p), 2, x_override=0)
    with pytest.raises(ValueError):
        cc_algo_c(p, borda(p), 5)
    with pytest.raises(ValueError):
        cc_algo_p_delta(p, borda(p), 2, 1.0)


def test_truncated_ballots_pointwise(rng):
    full = random_profile(rng, 20, 8)
    p = PreferenceProfile(8, [r[:3] for r in full.rankings])
    psf = ScoringFunction.truncated(8, 3)
    for rep in (cc_algo_gm(p, psf, 3), cc_algo_p(p, psf, 3), cc_algo_c(p, psf, 3)):
        assert pointwise_optimal(p, psf, rep)
