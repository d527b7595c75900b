"""Approximation algorithms for satisfaction-based utilitarian Chamberlin--Courant.

Every returned assignment maps each voter to their best-ranked committee
member, which is optimal for the committee.
"""

from __future__ import annotations

import time
from dataclasses import replace

import numpy as np

from . import bounds
from .assignment import cc_best
from .core import (Assignment, ElectionRule, PreferenceProfile, ScoringFunction, SolutionReport,
                   delta_min_satisfaction, make_report, satisfaction_matrix, voter_scores)
from .exact import DEFAULT_BUDGET, BudgetExceededError, brute_force_winners
from .monroe import sample_committees

__all__ = ["cc_algo_c", "cc_algo_gm", "cc_algo_p", "cc_algo_p_delta", "cc_algo_r", "cc_ptas"]


def _check(profile: PreferenceProfile, K: int) -> None:
    if K < 1:
        raise ValueError("committee size must be positive")
    if K > profile.num_alternatives:
        raise ValueError(f"K={K} exceeds the number of alternatives "
                         f"({profile.num_alternatives})")


def _report(profile, psf, S, name, started, **params) -> SolutionReport:
    S = np.array(sorted(S), dtype=np.int64)
    arr = cc_best(profile.positions, S)
    return make_report(profile, psf, Assignment.from_array(arr), name, started,
                       committee=S.tolist(), **params)


def cc_algo_c(profile: PreferenceProfile, psf: ScoringFunction, K: int,
              d: int = 15) -> SolutionReport:
    """Beam search keeping the ``d`` best committees per round.

    Extending a committee by ``a`` moves every voter who prefers ``a`` to
    their current representative. Committees reached twice keep the
    higher score. With ``d = 1`` this is :func:`cc_algo_gm`.
    """
    if d < 1:
        raise ValueError("beam width must be at least 1")
    _check(profile, K)
    started = time.perf_counter()
    sat = satisfaction_matrix(profile, psf)
    n, m = sat.shape
    floor = np.full(n, psf.scores[-1], dtype=np.int64)
    beam = [(int(floor.sum()), floor, ())]
    for _ in range(K):
        seen: dict[frozenset, int] = {}
        candidates = []
        for value, cur, used in beam:
            unused = np.setdiff1d(np.arange(m), used)
            gains = np.maximum(sat[:, unused] - cur[:, None], 0).sum(axis=0)
            for k, a in enumerate(unused.tolist()):
                key = frozenset(used + (a,))
                new_value = value + int(gains[k])
                if key in seen and candidates[seen[key]][0] >= new_value:
                    continue
                entry = (new_value, np.maximum(cur, sat[:, a]), used + (a,))
                if key in seen:
                    candidates[seen[key]] = entry
                else:
                    seen[key] = len(candidates)
                    candidates.append(entry)
        candidates.sort(key=lambda e: -e[0])
        beam = candidates[:d]
    return _report(profile, psf, beam[0][2], "cc-c", started, d=d)


def cc_algo_gm(profile: PreferenceProfile, psf: ScoringFunction, K: int) -> SolutionReport:
    """Greedy marginal improvement: add the alternative with the largest gain, ``K`` times."""
    _check(profile, K)
    started = time.perf_counter()
    sat = satisfaction_matrix(profile, psf)
    m = sat.shape[1]
    cur = np.full(sat.shape[0], psf.scores[-1], dtype=np.int64)
    S: list[int] = []
    for _ in range(K):
        unused = np.setdiff1d(np.arange(m), S)
        gains = np.maximum(sat[:, unused] - cur[:, None], 0).sum(axis=0)
        a = int(unused[np.argmax(gains)])
        S.append(a)
        cur = np.maximum(cur, sat[:, a])
    return _report(profile, psf, S, "cc-gm", started)


def _cover(pos: np.ndarray, K: int, x: int) -> list[int]:
    n, m = pos.shape
    free = np.ones(n, dtype=bool)
    S: list[int] = []
    for _ in range(K):
        unused = np.setdiff1d(np.arange(m), S)
        covered = pos[np.ix_(free, unused)] <= x
        a = int(unused[np.argmax(covered.sum(axis=0))])
        S.append(a)
        free &= ~(pos[:, a] <= x)
    return S


def cc_algo_p(profile: PreferenceProfile, psf: ScoringFunction, K: int,
              x_override: int | None = None) -> SolutionReport:
    """Greedy covering of voters' top-``x`` windows.

    ``x`` defaults to ``ceil(m W(K) / K)``. Each round elects the
    alternative appearing in the most windows of still-uncovered voters
    and covers them; finally each voter is represented by their favourite
    member of the elected committee.
    """
    _check(profile, K)
    m = profile.num_alternatives
    if x_override is not None and not 1 <= x_override:
        raise ValueError("window size must be at least 1")
    started = time.perf_counter()
    x = bounds.cc_p_window(m, K) if x_override is None else min(int(x_override), m)
    S = _cover(profile.positions, K, x)
    return _report(profile, psf, S, "cc-p", started, x=x)


def cc_algo_p_delta(profile: PreferenceProfile, psf: ScoringFunction, K: int,
                    delta: float) -> SolutionReport:
    """Covering with window ``ceil(-m ln(delta) / K)``, reporting the delta-egalitarian value.

    ``params["l_min_delta"]`` is the lowest satisfaction among the best
    ``ceil((1 - delta) n)`` voters and ``params["delta_bound"]`` the
    claimed ratio ``1 + ln(delta)/K``.
    """
    if not 0 < delta < 1:
        raise ValueError("delta must lie in (0, 1)")
    _check(profile, K)
    x = bounds.cc_delta_x(profile.num_alternatives, K, delta)
    rep = cc_algo_p(profile, psf, K, x_override=x)
    lmd = delta_min_satisfaction(voter_scores(profile, psf, rep.assignment), delta)
    return replace(rep, algorithm="cc-p-delta",
                   params=dict(rep.params, delta=delta, l_min_delta=lmd,
                               delta_bound=bounds.cc_delta_bound(K, delta)))


def cc_algo_r(profile: PreferenceProfile, psf: ScoringFunction, K: int, samples: int = 100,
              seed: int = 0) -> SolutionReport:
    """Best of ``samples`` uniformly random committees."""
    if samples < 1:
        raise ValueError("need at least one sample")
    _check(profile, K)
    started = time.perf_counter()
    sat = satisfaction_matrix(profile, psf)
    best_val, best = -1, None
    for S in sample_committees(profile.num_alternatives, K, samples, seed):
        val = int(sat[:, S].max(axis=1).sum())
        if val > best_val:
            best_val, best = val, S
    rep = _report(profile, psf, best, "cc-r", started, samples=samples)
    return replace(rep, seed=seed)


def cc_ptas(profile: PreferenceProfile, psf: ScoringFunction, K: int, epsilon: float,
            budget: int = DEFAULT_BUDGET) -> SolutionReport:
    """Ratio ``1 - epsilon`` for Borda CC: covering when ``2 W(K)/K <= epsilon``, else exact."""
    if not 0 < epsilon < 1:
        raise ValueError("epsilon must lie in (0, 1)")
    if bounds.cc_ptas_uses_greedy(K, epsilon):
        rep = cc_algo_p(profile, psf, K)
        return replace(rep, algorithm="cc-ptas", params=dict(rep.params, branch="covering",
                                                             epsilon=epsilon))
    try:
        rep = brute_force_winners(profile, psf, ElectionRule.chamberlin_courant(K), budget)
    except BudgetExceededError as exc:
        raise BudgetExceededError(f"cc-ptas (exact branch): {exc}") from None
    return replace(rep, algorithm="cc-ptas", params=dict(rep.params, branch="exact",
                                                         epsilon=epsilon))
