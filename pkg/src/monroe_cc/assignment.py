"""Optimal assignment of voters to a fixed committee.

Chamberlin--Courant needs no search: every voter takes their best-ranked
committee member. Capacitated (Monroe-style) assignment is a min-cost flow
on the voter/alternative bipartite network. We solve it either as a
rectangular assignment problem over capacity slots
(:func:`scipy.optimize.linear_sum_assignment`) or, when the slot matrix
would be too large, as a transportation LP whose constraint matrix is
totally unimodular, so the simplex vertex is integral.
"""

from __future__ import annotations

from typing import Mapping, Optional, Sequence, Union

import numpy as np
from scipy.optimize import linear_sum_assignment, linprog
from scipy.sparse import coo_matrix, vstack

from .core import Assignment, PreferenceProfile, ScoringFunction, satisfaction_matrix

__all__ = [
    "InfeasibleAssignmentError",
    "cc_assignment",
    "capacitated_assignment",
    "solve_capacitated",
    "cc_best",
]

# Above this many cost-matrix entries the slot expansion is replaced by an LP.
SLOT_MATRIX_LIMIT = 4_000_000

Capacity = Union[int, Sequence[int], Mapping[int, int]]


class InfeasibleAssignmentError(ValueError):
    """The committee cannot serve every voter within its capacities."""


def _committee(committee) -> np.ndarray:
    S = np.array(sorted({int(a) for a in committee}), dtype=np.int64)
    if S.size == 0:
        raise ValueError("committee must be nonempty")
    return S


def cc_best(positions: np.ndarray, S: np.ndarray) -> np.ndarray:
    """Best-ranked member of sorted ``S`` for every voter (lowest index on ties)."""
    return S[np.argmin(positions[:, S], axis=1)]


def cc_assignment(profile: PreferenceProfile, psf: ScoringFunction, committee) -> Assignment:
    """Assign each voter to the committee member they rank highest.

    This maximizes total satisfaction for every scoring function that does
    not increase with the position.
    """
    S = _committee(committee)
    if S.max() >= profile.num_alternatives:
        raise ValueError("committee contains an unknown alternative")
    return Assignment.from_array(cc_best(profile.positions, S))


def _caps_for(S: np.ndarray, capacity: Capacity) -> np.ndarray:
    if isinstance(capacity, (int, np.integer)):
        return np.full(len(S), int(capacity), dtype=np.int64)
    if isinstance(capacity, Mapping):
        return np.array([int(capacity[a]) for a in S.tolist()], dtype=np.int64)
    caps = np.asarray(capacity, dtype=np.int64)
    return caps[S]


def solve_capacitated(sat: np.ndarray, S: np.ndarray, caps: np.ndarray,
                      lower: Optional[np.ndarray] = None, method: str = "auto") -> np.ndarray:
    """Max-satisfaction assignment of voters to ``S`` under capacities.

    Parameters
    ----------
    sat : ndarray, shape (n, m)
        Satisfaction of each voter with each alternative.
    S : ndarray of int
        Sorted committee members.
    caps : ndarray of int
        Upper capacity of each member of ``S``.
    lower : ndarray of int, optional
        Lower capacity of each member. When given, every voter must be
        assigned.
    method : {"auto", "lsa", "lp"}

    Returns
    -------
    ndarray of int
        Alternative per voter, ``-1`` for unassigned voters. Exactly
        ``min(n, caps.sum())`` voters are assigned.
    """
    n = sat.shape[0]
    caps = np.minimum(caps, n)
    if lower is not None:
        lower = np.minimum(lower, caps)
        if caps.sum() < n:
            raise InfeasibleAssignmentError(
                f"{len(S)} alternatives with capacities summing to {caps.sum()} "
                f"cannot serve {n} voters")
        if lower.sum() > n:
            raise InfeasibleAssignmentError("lower capacities exceed the number of voters")
    slots = int(caps.sum())
    if method == "auto":
        method = "lsa" if n * slots <= SLOT_MATRIX_LIMIT else "lp"
    if method == "lsa":
        return _solve_lsa(sat, S, caps, lower)
    if method == "lp":
        return _solve_lp(sat, S, caps, lower)
    raise ValueError(f"unknown method {method!r}")


def _solve_lsa(sat, S, caps, lower):
    n = sat.shape[0]
    slot_alt = np.repeat(S, caps)
    weights = sat[:, slot_alt].astype(np.float64)
    if lower is not None and lower.any():
        # Slots below the lower bound carry a bonus larger than any total
        # satisfaction, so an optimum fills all of them first.
        rank_in_alt = np.concatenate([np.arange(c) for c in caps])
        mandatory = rank_in_alt < np.repeat(lower, caps)
        weights[:, mandatory] += float(np.abs(sat).sum() + 1)
    rows, cols = linear_sum_assignment(weights, maximize=True)
    out = np.full(n, -1, dtype=np.int64)
    out[rows] = slot_alt[cols]
    return out


def _solve_lp(sat, S, caps, lower):
    n, k = sat.shape[0], len(S)
    w = sat[:, S].astype(np.float64).ravel()  # variable v * k + j
    voters = np.repeat(np.arange(n), k)
    alts = np.tile(np.arange(k), n)
    ones = np.ones(n * k)
    A_voter = coo_matrix((ones, (voters, np.arange(n * k))), shape=(n, n * k)).tocsr()
    A_alt = coo_matrix((ones, (alts, np.arange(n * k))), shape=(k, n * k)).tocsr()
    if caps.sum() >= n:
        # every voter is served; alternatives stay within [lower, cap]
        lo = np.zeros(k) if lower is None else lower.astype(float)
        res = linprog(-w, A_ub=vstack([A_alt, -A_alt]).tocsr(), b_ub=np.concatenate([caps, -lo]),
                      A_eq=A_voter, b_eq=np.ones(n), bounds=(0, 1), method="highs-ds")
    else:
        res = linprog(-w, A_ub=A_voter, b_ub=np.ones(n), A_eq=A_alt,
                      b_eq=caps.astype(float), bounds=(0, 1), method="highs-ds")
    if res.status != 0:
        raise InfeasibleAssignmentError(f"transportation LP failed: {res.message}")
    x = np.rint(res.x).reshape(n, k)
    out = np.full(n, -1, dtype=np.int64)
    hit = x.max(axis=1) > 0.5
    out[hit] = S[np.argmax(x[hit], axis=1)]
    return out


def capacitated_assignment(profile: PreferenceProfile, psf: ScoringFunction, committee,
                           capacity: Capacity, require_balanced: bool = False,
                           method: str = "auto") -> Assignment:
    """Optimal (possibly partial) assignment to ``committee`` under capacities.

    Each member serves at most ``capacity`` voters (an int, or one value
    per alternative). Without balancing, ``min(n, total capacity)`` voters
    are assigned. With ``require_balanced`` every voter is assigned and
    each member serves at least ``n // len(committee)`` voters, which for
    ``capacity = ceil(n / K)`` is exactly the Monroe constraint.

    Raises
    ------
    InfeasibleAssignmentError
        If balancing is required but the capacities cannot cover all
        voters.
    """
    S = _committee(committee)
    if S.max() >= profile.num_alternatives:
        raise ValueError("committee contains an unknown alternative")
    caps = _caps_for(S, capacity)
    lower = None
    if require_balanced:
        lower = np.full(len(S), profile.num_voters // len(S), dtype=np.int64)
    sat = satisfaction_matrix(profile, psf)
    return Assignment.from_array(solve_capacitated(sat, S, caps, lower, method))


def monroe_caps(n: int, K: int) -> tuple[int, int]:
    """Monroe (lower, upper) load of a committee member."""
    return n // K, -(-n // K)
