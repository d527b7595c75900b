"""Exact winner determination for small elections, and ILP export.

:func:`brute_force_winners` enumerates committees and solves the
assignment for each one. :func:`exhaustive_optimum` enumerates assignments
directly and shares no code with the flow solver, so the two serve as
independent oracles for each other.
"""

from __future__ import annotations

import itertools
import math
import time
from functools import lru_cache
from typing import TextIO

import numpy as np

from .assignment import InfeasibleAssignmentError, solve_capacitated
from .core import (Assignment, ElectionRule, PreferenceProfile, ScoringFunction, SolutionReport,
                   Variant, make_report, satisfaction_matrix)

DEFAULT_BUDGET = 200_000


class BudgetExceededError(RuntimeError):
    """Exhaustive search would enumerate more committees than allowed."""


def check_budget(m: int, K: int, budget: int, what: str = "brute force") -> int:
    count = math.comb(m, K)
    if count > budget:
        raise BudgetExceededError(
            f"{what}: C({m}, {K}) = {count} committees exceeds the budget of {budget}")
    return count


def _validate_size(profile: PreferenceProfile, K: int, variant: Variant) -> None:
    if K < 1:
        raise ValueError("committee size must be positive")
    if K > profile.num_alternatives:
        raise ValueError(f"K={K} exceeds the number of alternatives")
    if variant is Variant.MONROE and K > profile.num_voters:
        raise ValueError(f"K={K} exceeds the number of voters")


def committee_assignment(sat: np.ndarray, positions: np.ndarray, rule: ElectionRule,
                         S: np.ndarray) -> np.ndarray:
    """Optimal assignment to committee ``S`` under ``rule``'s capacities."""
    n = sat.shape[0]
    if rule.variant is Variant.CC:
        return S[np.argmin(positions[:, S], axis=1)]
    if rule.variant is Variant.MONROE:
        lo, hi = n // len(S), -(-n // len(S))
        return solve_capacitated(sat, S, np.full(len(S), hi), np.full(len(S), lo))
    caps = np.asarray(rule.capacities, dtype=np.int64)[S]
    return solve_capacitated(sat, S, caps, np.zeros(len(S), dtype=np.int64))


def brute_force_winners(profile: PreferenceProfile, psf: ScoringFunction, rule: ElectionRule,
                        budget: int = DEFAULT_BUDGET) -> SolutionReport:
    """Optimal committee by enumerating all ``K``-subsets.

    Committees are visited in lexicographic order and the first one with
    the highest total satisfaction wins.

    Raises
    ------
    BudgetExceededError
        If ``C(m, K)`` exceeds ``budget``.
    """
    started = time.perf_counter()
    K, m = rule.committee_size, profile.num_alternatives
    _validate_size(profile, K, rule.variant)
    count = check_budget(m, K, budget)
    sat = satisfaction_matrix(profile, psf)
    pos = profile.positions
    if rule.variant is Variant.CC:
        best_S = _best_cc_committee(sat, K)
        arr = committee_assignment(sat, pos, rule, best_S)
    else:
        best_val, arr, best_S = -1, None, None
        for combo in itertools.combinations(range(m), K):
            S = np.array(combo)
            try:
                cand = committee_assignment(sat, pos, rule, S)
            except InfeasibleAssignmentError:
                continue
            val = int(sat[np.arange(len(cand)), cand].sum())
            if val > best_val:
                best_val, arr, best_S = val, cand, S
        if arr is None:
            raise InfeasibleAssignmentError("no committee can serve every voter")
    report = make_report(profile, psf, Assignment.from_array(arr), "exact", started,
                         committee=best_S.tolist(), committees_evaluated=count)
    return report.with_opt(report.l1)


def _best_cc_committee(sat: np.ndarray, K: int, chunk: int = 4096) -> np.ndarray:
    m = sat.shape[1]
    combos = itertools.combinations(range(m), K)
    best_val, best = -1, None
    while True:
        block = np.array(list(itertools.islice(combos, chunk)), dtype=np.int64)
        if block.size == 0:
            break
        vals = sat[:, block].max(axis=2).sum(axis=0)
        i = int(np.argmax(vals))
        if vals[i] > best_val:
            best_val, best = int(vals[i]), block[i]
    return best


@lru_cache(maxsize=64)
def _all_maps(n: int, K: int) -> np.ndarray:
    maps = np.array(list(itertools.product(range(K), repeat=n)), dtype=np.int8)
    return maps.reshape(-1, n)


def exhaustive_optimum(profile: PreferenceProfile, psf: ScoringFunction,
                       rule: ElectionRule) -> int:
    """Optimal total satisfaction by enumerating voter-to-alternative maps.

    Every feasible assignment uses at most ``K`` alternatives, so it maps
    voters into some ``K``-subset; all maps into every ``K``-subset are
    scored and filtered by the rule's load constraints. Intended for
    ``n <= 8``.
    """
    K, n, m = rule.committee_size, profile.num_voters, profile.num_alternatives
    _validate_size(profile, K, rule.variant)
    sat = satisfaction_matrix(profile, psf)
    maps = _all_maps(n, K).astype(np.int64)
    loads = np.stack([(maps == j).sum(axis=1) for j in range(K)], axis=1)
    if rule.variant is Variant.MONROE:
        lo, hi = n // K, -(-n // K)
        ok = ((loads >= lo) & (loads <= hi)).all(axis=1)
    else:
        ok = np.ones(len(maps), dtype=bool)
    best = -1
    for combo in itertools.combinations(range(m), K):
        S = np.array(combo)
        feasible = ok
        if rule.variant is Variant.GENERAL:
            caps = np.asarray(rule.capacities)[S]
            feasible = (loads <= caps).all(axis=1)
        if not feasible.any():
            continue
        chosen = S[maps[feasible]]
        totals = sat[np.arange(n), chosen].sum(axis=1)
        best = max(best, int(totals.max()))
    if best < 0:
        raise InfeasibleAssignmentError("no assignment satisfies the capacities")
    return best


def emit_ilp(profile: PreferenceProfile, psf: ScoringFunction, rule: ElectionRule,
             sink: TextIO) -> None:
    """Write the winner-determination ILP in CPLEX LP format.

    Variables are binary: ``a_i_j`` (voter ``i`` represented by ``j``) and
    ``x_j`` (``j`` elected). The load-balancing rows are only written for
    Monroe.
    """
    n, m, K = profile.num_voters, profile.num_alternatives, rule.committee_size
    sat = satisfaction_matrix(profile, psf)
    lo, hi = n // K, -(-n // K)

    def a(i, j):
        return f"a_{i}_{j}"

    def wrap(terms):
        # LP format readers cap line length; keep rows to a few terms per line.
        lines, line = [], []
        for t in terms:
            line.append(t)
            if len(line) == 8:
                lines.append(" ".join(line))
                line = []
        if line:
            lines.append(" ".join(line))
        return "\n   ".join(lines)

    out = [f"\\ {rule.variant.value} winner determination: n={n} m={m} K={K}", "Maximize"]
    obj = [f"+ {int(sat[i, j])} {a(i, j)}" for i in range(n) for j in range(m)]
    out.append(" obj: " + wrap(obj))
    out.append("Subject To")
    for i in range(n):
        for j in range(m):
            out.append(f" link_{i}_{j}: {a(i, j)} - x_{j} <= 0")
    for i in range(n):
        out.append(f" one_{i}: " + wrap([f"+ {a(i, j)}" for j in range(m)]) + " = 1")
    if rule.variant is Variant.MONROE:
        for j in range(m):
            load = wrap([f"+ {a(i, j)}" for i in range(n)])
            out.append(f" low_{j}: {load} - {lo} x_{j} >= 0")
            out.append(f" high_{j}: {load} - {hi} x_{j} <= 0")
    elif rule.variant is Variant.GENERAL:
        for j, cap in enumerate(rule.capacities):
            load = wrap([f"+ {a(i, j)}" for i in range(n)])
            out.append(f" cap_{j}: {load} - {cap} x_{j} <= 0")
    out.append(" size: " + wrap([f"+ x_{j}" for j in range(m)]) + f" <= {K}")
    out.append("Binary")
    names = [a(i, j) for i in range(n) for j in range(m)] + [f"x_{j}" for j in range(m)]
    for k in range(0, len(names), 8):
        out.append(" " + " ".join(names[k:k + 8]))
    out.append("End")
    sink.write("\n".join(out) + "\n")
