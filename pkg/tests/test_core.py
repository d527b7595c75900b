from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, strategies as st

from monroe_cc import (Assignment, ElectionRule, Metric, PreferenceProfile, ScoringFunction,
                       evaluate, evaluation_report, ideal_satisfaction, position_of)
from monroe_cc.core import delta_min_satisfaction, satisfaction_matrix

from conftest import profiles


def test_position_top_bottom_and_unlisted():
    p = PreferenceProfile(10, [tuple(range(10)), (4, 2, 7)])
    assert position_of(p, 0, 0) == 1
    assert position_of(p, 0, 9) == 10
    assert position_of(p, 1, 0) == 10
    assert p.position_of(1, 7) == 3


@pytest.mark.parametrize("rows", [[(0, 0)], [(0, 5)], [()]])
def test_profile_rejects_bad_ballots(rows):
    with pytest.raises(ValueError):
        PreferenceProfile(3, rows)


def test_position_of_out_of_range():
    p = PreferenceProfile(2, [(0, 1)])
    with pytest.raises(ValueError):
        p.position_of(3, 0)


def test_scoring_functions():
    assert ScoringFunction.borda_dec(4).scores == (3, 2, 1, 0)
    assert ScoringFunction.borda_inc(4).scores == (0, 1, 2, 3)
    assert ScoringFunction.truncated(5, 2).scores == (4, 3, 0, 0, 0)
    assert not ScoringFunction.borda_inc(4).is_satisfaction
    with pytest.raises(ValueError):
        ScoringFunction.truncated(3, 4)


@given(st.integers(1, 30), st.data())
def test_truncated_agrees_with_borda_up_to_p(m, data):
    P = data.draw(st.integers(1, m))
    t, b = ScoringFunction.truncated(m, P), ScoringFunction.borda_dec(m)
    for pos in range(1, m + 1):
        assert t(pos) == (b(pos) if pos <= P else 0)


def test_evaluate_examples(three_voters):
    two = PreferenceProfile(2, [(0, 1), (1, 0)])
    psf = ScoringFunction.borda_dec(2)
    assert evaluate(two, psf, Assignment((0, 1))) == 2
    both_a = Assignment((0, 0))
    assert evaluate(two, psf, both_a) == 1
    assert evaluate(two, psf, both_a, Metric.LMIN) == 0
    assert evaluate(two, psf, both_a, Metric.LINF) == 1
    assert evaluate(three_voters, ScoringFunction.borda_dec(3), Assignment((0, 0, 0))) == 5


@pytest.mark.parametrize("n,m,ideal", [(100, 10, 900), (2, 2, 2), (1000, 100, 99000)])
def test_ideal(n, m, ideal):
    p = PreferenceProfile.from_array(np.tile(np.arange(m), (n, 1)))
    assert ideal_satisfaction(p, ScoringFunction.borda_dec(m)) == ideal


@given(profiles(n=(1, 10), m=(1, 7)), st.data())
def test_l1_range_and_additivity(p, data):
    m = p.num_alternatives
    psf = ScoringFunction.borda_dec(m)
    arr = data.draw(st.lists(st.integers(0, m - 1), min_size=p.num_voters,
                             max_size=p.num_voters))
    total = evaluate(p, psf, Assignment(tuple(arr)))
    assert 0 <= total <= p.num_voters * (m - 1)
    parts = sum(evaluate(PreferenceProfile(m, [p.rankings[v]]), psf, Assignment((a,)))
                for v, a in enumerate(arr))
    assert parts == total


def test_unassigned_voter_counts_as_last():
    p = PreferenceProfile(3, [(0, 1, 2), (2, 1, 0)])
    psf = ScoringFunction.borda_dec(3)
    assert evaluate(p, psf, Assignment((0, None))) == 2
    assert not Assignment((0, None)).is_complete()


def test_satisfaction_matrix_truncated_ballot():
    p = PreferenceProfile(4, [(2, 0)])
    assert satisfaction_matrix(p, ScoringFunction.borda_dec(4)).tolist() == [[2, 0, 3, 0]]


def test_evaluation_report_exact_ratios(three_voters):
    rep = evaluation_report(three_voters, ScoringFunction.borda_dec(3), Assignment((0, 0, 0)),
                            opt=5)
    assert rep.ratio_to_ideal == Fraction(5, 6)
    assert rep.ratio_to_opt == 1


def test_election_rule_validation():
    assert ElectionRule.monroe(3).capacity_bounds(10) == (3, 4)
    assert ElectionRule.chamberlin_courant(3).capacity_bounds(10) == (0, 10)
    with pytest.raises(ValueError):
        ElectionRule.monroe(0)


def test_delta_min():
    s = np.array([5, 1, 4, 3, 2, 0, 9, 8, 7, 6])
    assert delta_min_satisfaction(s, 0.1) == 1
    assert delta_min_satisfaction(s, 0.5) == 5
