"""Approximation algorithms for satisfaction-based utilitarian Monroe.

All algorithms return a :class:`~monroe_cc.core.SolutionReport` whose
assignment gives every committee member between ``floor(n/K)`` and
``ceil(n/K)`` voters. Ties are broken towards the lowest alternative
index and, when choosing voters, towards the lowest voter index.
"""

from __future__ import annotations

import time
from dataclasses import replace
from typing import Optional

import numpy as np

from . import bounds
from .assignment import solve_capacitated
from .core import (Assignment, ElectionRule, PreferenceProfile, ScoringFunction, SolutionReport,
                   make_report, satisfaction_matrix)
from .exact import DEFAULT_BUDGET, BudgetExceededError, brute_force_winners
from .profiles import make_rng

__all__ = ["algo_a", "algo_b", "algo_c", "algo_gm", "algo_r", "algo_ar", "round_sizes"]


def _check(profile: PreferenceProfile, K: int) -> None:
    if K < 1:
        raise ValueError("committee size must be positive")
    if K > profile.num_alternatives:
        raise ValueError(f"K={K} exceeds the number of alternatives "
                         f"({profile.num_alternatives})")
    if K > profile.num_voters:
        raise ValueError(f"K={K} exceeds the number of voters ({profile.num_voters})")


def round_sizes(n: int, K: int) -> list[int]:
    """Voters assigned per greedy round: the ``n mod K`` larger groups come first."""
    r = n % K
    return [n // K + 1] * r + [n // K] * (K - r)


def _balanced(sat: np.ndarray, S) -> np.ndarray:
    S = np.array(sorted(S), dtype=np.int64)
    n, k = sat.shape[0], len(S)
    return solve_capacitated(sat, S, np.full(k, -(-n // k)), np.full(k, n // k))


def _relabel(report: SolutionReport, name: str, **params) -> SolutionReport:
    return replace(report, algorithm=name, params=dict(report.params, **params))


def _exact(profile, psf, K, name, budget, branch="exact"):
    try:
        rep = brute_force_winners(profile, psf, ElectionRule.monroe(K), budget)
    except BudgetExceededError as exc:
        raise BudgetExceededError(f"{name} ({branch} branch): {exc}") from None
    return _relabel(rep, name, branch=branch)


def _extensions(sat: np.ndarray, pos: np.ndarray, assigned: np.ndarray, unused: np.ndarray,
                g: int):
    """Best ``g`` free voters for every unused alternative, and their total score.

    Returns ``(scores, picks)`` where ``picks[:, k]`` are the voter indices
    chosen for ``unused[k]``, ordered by position then voter index.
    """
    free = np.flatnonzero(assigned < 0)
    order = np.argsort(pos[np.ix_(free, unused)], axis=0, kind="stable")[:g]
    picks = free[order]
    scores = sat[picks, unused[None, :]].sum(axis=0)
    return scores, picks


def _greedy(sat, pos, K):
    n, m = sat.shape
    assigned = np.full(n, -1, dtype=np.int64)
    used: list[int] = []
    for g in round_sizes(n, K):
        unused = np.setdiff1d(np.arange(m), used)
        scores, picks = _extensions(sat, pos, assigned, unused, g)
        k = int(np.argmax(scores))
        assigned[picks[:, k]] = unused[k]
        used.append(int(unused[k]))
    return assigned, used


def algo_a(profile: PreferenceProfile, psf: ScoringFunction, K: int,
           budget: int = DEFAULT_BUDGET) -> SolutionReport:
    """Greedy Monroe: each round elects the alternative whose best free voters
    are happiest and assigns those voters to it.

    For ``K <= 2`` the optimal solution is computed instead.
    """
    _check(profile, K)
    if K <= 2:
        return _exact(profile, psf, K, "monroe-a", budget)
    started = time.perf_counter()
    assigned, used = _greedy(satisfaction_matrix(profile, psf), profile.positions, K)
    return make_report(profile, psf, Assignment.from_array(assigned), "monroe-a", started,
                       committee=used, branch="greedy")


def algo_b(profile: PreferenceProfile, psf: ScoringFunction, K: int,
           budget: int = DEFAULT_BUDGET) -> SolutionReport:
    """Greedy Monroe followed by an optimal reassignment to the chosen committee."""
    _check(profile, K)
    if K <= 2:
        return _exact(profile, psf, K, "monroe-b", budget)
    started = time.perf_counter()
    sat = satisfaction_matrix(profile, psf)
    _, used = _greedy(sat, profile.positions, K)
    arr = _balanced(sat, used)
    return make_report(profile, psf, Assignment.from_array(arr), "monroe-b", started,
                       committee=used, branch="greedy")


def algo_c(profile: PreferenceProfile, psf: ScoringFunction, K: int, d: int = 15,
           budget: int = DEFAULT_BUDGET) -> SolutionReport:
    """Beam search over greedy partial assignments.

    Each round extends every kept partial assignment by every unused
    alternative (with its best free voters), drops extensions that repeat
    a committee already seen with a higher partial score, and keeps the
    ``d`` best. The surviving committees are then reassigned optimally and
    the best one is returned. ``d = 1`` gives :func:`algo_b`.
    """
    if d < 1:
        raise ValueError("beam width must be at least 1")
    _check(profile, K)
    if K <= 2:
        return _exact(profile, psf, K, "monroe-c", budget, branch="exact")
    started = time.perf_counter()
    sat = satisfaction_matrix(profile, psf)
    pos = profile.positions
    n, m = sat.shape
    beam = [(0, np.full(n, -1, dtype=np.int64), ())]
    for g in round_sizes(n, K):
        seen: dict[frozenset, int] = {}
        candidates = []
        for value, assigned, used in beam:
            unused = np.setdiff1d(np.arange(m), used)
            scores, picks = _extensions(sat, pos, assigned, unused, g)
            for k, a in enumerate(unused.tolist()):
                key = frozenset(used + (a,))
                new_value = value + int(scores[k])
                if key in seen and candidates[seen[key]][0] >= new_value:
                    continue
                nxt = assigned.copy()
                nxt[picks[:, k]] = a
                entry = (new_value, nxt, used + (a,))
                if key in seen:
                    candidates[seen[key]] = entry
                else:
                    seen[key] = len(candidates)
                    candidates.append(entry)
        candidates.sort(key=lambda e: -e[0])
        beam = candidates[:d]
    best_val, best = -1, None
    for _, _, used in beam:
        arr = _balanced(sat, used)
        val = int(sat[np.arange(n), arr].sum())
        if val > best_val:
            best_val, best = val, (arr, used)
    arr, used = best
    return make_report(profile, psf, Assignment.from_array(arr), "monroe-c", started,
                       committee=used, d=d, branch="beam")


def algo_gm(profile: PreferenceProfile, psf: ScoringFunction, K: int) -> SolutionReport:
    """Greedy marginal improvement of the capacitated assignment value.

    Round ``i`` adds the alternative maximizing the optimal partial
    assignment value with every member capped at ``ceil(n/K)`` voters.
    """
    _check(profile, K)
    started = time.perf_counter()
    sat = satisfaction_matrix(profile, psf)
    n, m = sat.shape
    cap = -(-n // K)
    rows = np.arange(n)
    S: list[int] = []
    for _ in range(K):
        best_val, best_a = -1, None
        for a in range(m):
            if a in S:
                continue
            T = np.array(sorted(S + [a]), dtype=np.int64)
            arr = solve_capacitated(sat, T, np.full(len(T), cap))
            hit = arr >= 0
            val = int(sat[rows[hit], arr[hit]].sum())
            if val > best_val:
                best_val, best_a = val, a
        S.append(best_a)
    arr = _balanced(sat, S)
    return make_report(profile, psf, Assignment.from_array(arr), "monroe-gm", started,
                       committee=S)


def sample_committees(m: int, K: int, samples: int, seed: int) -> list[np.ndarray]:
    """Uniform ``K``-subsets; sample ``i`` uses its own stream keyed by ``(seed, i)``."""
    out = []
    for i in range(samples):
        rng = make_rng(np.random.SeedSequence([seed, i]))
        out.append(np.sort(rng.choice(m, size=K, replace=False)))
    return out


def algo_r(profile: PreferenceProfile, psf: ScoringFunction, K: int, samples: int = 100,
           seed: int = 0) -> SolutionReport:
    """Best of ``samples`` uniformly random committees, each assigned optimally."""
    if samples < 1:
        raise ValueError("need at least one sample")
    _check(profile, K)
    started = time.perf_counter()
    sat = satisfaction_matrix(profile, psf)
    rows = np.arange(sat.shape[0])
    best_val, best = -1, None
    for S in sample_committees(profile.num_alternatives, K, samples, seed):
        arr = _balanced(sat, S)
        val = int(sat[rows, arr].sum())
        if val > best_val:
            best_val, best = val, (arr, S)
    arr, S = best
    return make_report(profile, psf, Assignment.from_array(arr), "monroe-r", started,
                       committee=S.tolist(), seed=seed, samples=samples)


def algo_ar(profile: PreferenceProfile, psf: ScoringFunction, K: int, epsilon: float = 0.1,
            lam: float = 0.9, seed: int = 0, budget: int = DEFAULT_BUDGET,
            max_samples: Optional[int] = None) -> SolutionReport:
    """Greedy and random sampling combined, with exact fallbacks.

    Small elections (``m <= 1 + 2/epsilon``) and small committees
    (``K <= 8`` or ``H_K / K >= epsilon / 2``) are solved exactly;
    otherwise the better of :func:`algo_a` and
    ``ceil(-512 ln(1 - lam) / (K epsilon^2))`` samples of :func:`algo_r`
    is returned.

    Raises
    ------
    BudgetExceededError
        If an exact branch is selected but exceeds ``budget``; the message
        names the branch.
    """
    if not 0 < epsilon < 1 or not 0 < lam < 1:
        raise ValueError("need 0 < epsilon < 1 and 0 < lambda < 1")
    _check(profile, K)
    m = profile.num_alternatives
    if m <= 1 + 2 / epsilon:
        return _exact(profile, psf, K, "monroe-ar", budget, branch="exact-small-m")
    if float(bounds.harmonic(K)) / K >= epsilon / 2 or K <= 8:
        return _exact(profile, psf, K, "monroe-ar", budget, branch="exact-fixed-k")
    samples = bounds.ar_sample_count(K, epsilon, lam)
    if max_samples is not None:
        samples = min(samples, max_samples)
    greedy = algo_a(profile, psf, K)
    sampled = algo_r(profile, psf, K, samples, seed)
    best = greedy if greedy.l1 >= sampled.l1 else sampled
    best = _relabel(best, "monroe-ar", branch="greedy" if best is greedy else "sampling",
                    samples=samples, epsilon=epsilon, lam=lam)
    return replace(best, seed=seed)
