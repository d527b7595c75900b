import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from monroe_cc import (BudgetExceededError, ElectionRule, PreferenceProfile, algo_a, algo_ar,
                       algo_b, algo_c, algo_gm, algo_r, brute_force_winners, evaluate)
from monroe_cc.bounds import monroe_greedy_bound, sampling_expected_ratio
from monroe_cc.monroe import round_sizes

from conftest import borda, profiles, random_profile


def balanced(rep, n, K):
    loads = rep.assignment.load()
    return (rep.assignment.is_complete() and len(loads) == K
            and all(n // K <= c <= -(-n // K) for c in loads.values()))


def test_round_sizes():
    assert round_sizes(10, 3) == [4, 3, 3]
    assert sum(round_sizes(17, 5)) == 17


def test_unanimous():
    n, m, K = 12, 7, 3
    p = PreferenceProfile.from_array(np.tile(np.arange(m), (n, 1)))
    expect = n // K * sum(m - i for i in range(1, K + 1))
    assert algo_a(p, borda(p), K).l1 == expect
    assert algo_b(p, borda(p), K).l1 == expect


def test_k1_is_borda_winner(rng):
    p = random_profile(rng, 9, 5)
    rep = algo_a(p, borda(p), 1)
    totals = (p.num_alternatives - p.positions).sum(axis=0)
    assert rep.committee == (int(np.argmax(totals)),)
    assert rep.params["branch"] == "exact"


def test_greedy_guarantee_instance(rng):
    n, m, K = 12, 6, 3
    for _ in range(10):
        p = random_profile(rng, n, m)
        l1 = algo_a(p, borda(p), K).l1
        assert l1 >= monroe_greedy_bound(m, K) * n * (m - 1)
        assert l1 <= brute_force_winners(p, borda(p), ElectionRule.monroe(K)).l1


@settings(max_examples=80, deadline=None)
@given(profiles(n=(3, 10), m=(3, 6)), st.data())
def test_chain_and_balance(p, data):
    n, m = p.num_voters, p.num_alternatives
    K = data.draw(st.integers(1, min(m, n)))
    psf = borda(p)
    a, b = algo_a(p, psf, K), algo_b(p, psf, K)
    c1, c = algo_c(p, psf, K, d=1), algo_c(p, psf, K, d=4)
    gm, r = algo_gm(p, psf, K), algo_r(p, psf, K, samples=5, seed=1)
    opt = brute_force_winners(p, psf, ElectionRule.monroe(K)).l1
    for rep in (a, b, c1, c, gm, r):
        assert balanced(rep, n, K)
        assert rep.l1 <= opt
        assert evaluate(p, psf, rep.assignment) == rep.l1
    assert a.l1 <= b.l1 == c1.l1
    assert gm.l1 >= (1 - 1 / math.e) * opt


@settings(max_examples=30, deadline=None)
@given(profiles(n=(2, 8), m=(2, 5)), st.data())
def test_wide_beam_is_exact_on_tiny(p, data):
    K = data.draw(st.integers(1, min(2, p.num_voters)))
    psf = borda(p)
    assert algo_c(p, psf, K, d=25).l1 == brute_force_winners(p, psf, ElectionRule.monroe(K)).l1


def test_b_equals_a_on_unanimous():
    p = PreferenceProfile.from_array(np.tile(np.arange(8), (9, 1)))
    assert algo_a(p, borda(p), 3).l1 == algo_b(p, borda(p), 3).l1


def test_gm_k1_exact(rng):
    p = random_profile(rng, 8, 6)
    assert algo_gm(p, borda(p), 1).l1 == brute_force_winners(p, borda(p),
                                                             ElectionRule.monroe(1)).l1


def test_r_full_committee(rng):
    p = random_profile(rng, 8, 4)
    assert algo_r(p, borda(p), 4, samples=1).l1 == \
        brute_force_winners(p, borda(p), ElectionRule.monroe(4)).l1


def test_r_single_sample_mean():
    m, K, n = 10, 6, 60
    rng = np.random.default_rng(3)
    ratios = []
    for seed in range(300):
        p = random_profile(rng, n, m)
        ratios.append(algo_r(p, borda(p), K, samples=1, seed=seed).l1 / (n * (m - 1)))
    assert np.mean(ratios) >= sampling_expected_ratio(m, K) - 0.05


def test_ar_branches(rng):
    p = random_profile(rng, 10, 22)
    assert algo_ar(p, borda(p), 5, epsilon=0.1).params["branch"] == "exact-fixed-k"
    small = random_profile(rng, 8, 4)
    assert algo_ar(small, borda(small), 2, epsilon=0.5).params["branch"] == "exact-small-m"
    big = random_profile(rng, 40, 40)
    rep = algo_ar(big, borda(big), 20, epsilon=0.5, max_samples=5)
    assert rep.params["branch"] in ("greedy", "sampling")
    assert rep.params["samples"] == 5
    assert balanced(rep, 40, 20)


def test_ar_budget_names_branch(rng):
    p = random_profile(rng, 20, 30)
    with pytest.raises(BudgetExceededError, match="exact-fixed-k"):
        algo_ar(p, borda(p), 8, epsilon=0.1, budget=10)


@pytest.mark.parametrize("K", [0, 7])
def test_bad_committee_size(rng, K):
    p = random_profile(rng, 5, 6)
    with pytest.raises(ValueError):
        algo_a(p, borda(p), K)


def test_deterministic(rng):
    p = random_profile(rng, 30, 8)
    psf = borda(p)
    for f in (lambda: algo_a(p, psf, 3), lambda: algo_c(p, psf, 3),
              lambda: algo_gm(p, psf, 3), lambda: algo_r(p, psf, 3, seed=4)):
        assert f() == f()
    assert algo_r(p, psf, 3, samples=3, seed=1).params == algo_r(p, psf, 3, samples=3,
                                                                 seed=2).params
