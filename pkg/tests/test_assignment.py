import networkx as nx
import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from monroe_cc import (InfeasibleAssignmentError, PreferenceProfile, ScoringFunction,
                       capacitated_assignment, cc_assignment, evaluate)
from monroe_cc.assignment import solve_capacitated
from monroe_cc.core import satisfaction_matrix

from conftest import borda, brute_assignment_value, profiles


def flow_value(sat, S, caps):
    """Min-cost max-flow on the voter/member network, solved by networkx."""
    n = sat.shape[0]
    top = int(sat.max())
    g = nx.DiGraph()
    g.add_node("s", demand=-min(n, sum(caps)))
    g.add_node("t", demand=min(n, sum(caps)))
    for v in range(n):
        g.add_edge("s", ("v", v), capacity=1, weight=0)
        for a in S:
            g.add_edge(("v", v), ("a", a), capacity=1, weight=top - int(sat[v, a]))
    for a, c in zip(S, caps):
        g.add_edge(("a", a), "t", capacity=int(c), weight=0)
    flow = nx.min_cost_flow(g)
    return sum(int(sat[v, a]) for v in range(n) for a in S if flow[("v", v)][("a", a)])


def test_cc_best_available():
    p = PreferenceProfile(3, [(0, 1, 2)])
    assert cc_assignment(p, borda(p), [1, 2]).assigned == (1,)


def test_cc_full_committee_is_ideal(rng):
    p = PreferenceProfile.from_array([rng.permutation(6) for _ in range(20)])
    a = cc_assignment(p, borda(p), range(6))
    assert evaluate(p, borda(p), a) == 20 * 5


def test_cc_singleton(three_voters):
    assert evaluate(three_voters, borda(three_voters),
                    cc_assignment(three_voters, borda(three_voters), [0])) == 5


def test_capacitated_example():
    p = PreferenceProfile(2, [(0, 1)] * 3 + [(1, 0)])
    a = capacitated_assignment(p, borda(p), [0, 1], 2, require_balanced=True)
    assert evaluate(p, borda(p), a) == 3
    assert a.load() == {0: 2, 1: 2}


def test_perfect_matching():
    p = PreferenceProfile(2, [(0, 1), (1, 0)])
    a = capacitated_assignment(p, borda(p), [0, 1], 1)
    assert a.assigned == (0, 1)


@given(profiles(n=(1, 8), m=(1, 5)))
def test_singleton_full_capacity_matches_cc(p):
    psf = borda(p)
    a = capacitated_assignment(p, psf, [0], p.num_voters)
    assert evaluate(p, psf, a) == evaluate(p, psf, cc_assignment(p, psf, [0]))


def test_infeasible_balance():
    p = PreferenceProfile(2, [(0, 1)] * 5)
    with pytest.raises(InfeasibleAssignmentError):
        capacitated_assignment(p, borda(p), [0, 1], 2, require_balanced=True)


@settings(max_examples=150, deadline=None)
@given(profiles(n=(1, 7), m=(1, 5)), st.data())
def test_balanced_matches_enumeration(p, data):
    m, n = p.num_alternatives, p.num_voters
    k = data.draw(st.integers(1, min(m, n, 4)))
    S = sorted(data.draw(st.permutations(range(m)))[:k])
    psf = borda(p)
    a = capacitated_assignment(p, psf, S, -(-n // k), require_balanced=True)
    loads = a.load()
    assert set(loads) <= set(S) and a.is_complete()
    assert all(n // k <= loads.get(s, 0) <= -(-n // k) for s in S)
    assert evaluate(p, psf, a) == brute_assignment_value(p, psf, S, n // k, -(-n // k))


@settings(max_examples=150, deadline=None)
@given(profiles(n=(1, 12), m=(1, 6)), st.data())
def test_partial_matches_min_cost_flow(p, data):
    m, n = p.num_alternatives, p.num_voters
    k = data.draw(st.integers(1, m))
    S = np.array(sorted(data.draw(st.permutations(range(m)))[:k]))
    caps = np.array(data.draw(st.lists(st.integers(0, n), min_size=k, max_size=k)))
    sat = satisfaction_matrix(p, borda(p))
    expect = flow_value(sat, S.tolist(), caps.tolist())
    for method in ("lsa", "lp"):
        arr = solve_capacitated(sat, S, caps, method=method)
        hit = arr >= 0
        assert hit.sum() == min(n, caps.sum())
        assert all((arr == s).sum() <= c for s, c in zip(S, caps))
        assert int(sat[np.flatnonzero(hit), arr[hit]].sum()) == expect


@settings(max_examples=50, deadline=None)
@given(profiles(n=(2, 40), m=(2, 8)), st.data())
def test_lp_and_lsa_agree_balanced(p, data):
    n, m = p.num_voters, p.num_alternatives
    k = data.draw(st.integers(1, min(m, n)))
    S = np.arange(k)
    sat = satisfaction_matrix(p, borda(p))
    caps, lower = np.full(k, -(-n // k)), np.full(k, n // k)
    vals = []
    for method in ("lsa", "lp"):
        arr = solve_capacitated(sat, S, caps, lower, method=method)
        vals.append(int(sat[np.arange(n), arr].sum()))
    assert vals[0] == vals[1]


@settings(max_examples=60, deadline=None)
@given(profiles(n=(1, 8), m=(2, 6)), st.data())
def test_monotone_in_committee(p, data):
    """Adding a member never lowers the capped partial optimum."""
    n, m = p.num_voters, p.num_alternatives
    K = data.draw(st.integers(2, m))
    perm = data.draw(st.permutations(range(m)))
    T = np.array(sorted(perm[:K]))
    S = np.array(sorted(perm[:K - 1]))
    sat = satisfaction_matrix(p, borda(p))
    cap = -(-n // K)

    def z(X):
        arr = solve_capacitated(sat, X, np.full(len(X), cap))
        hit = arr >= 0
        return int(sat[np.flatnonzero(hit), arr[hit]].sum())

    assert z(S) <= z(T)
