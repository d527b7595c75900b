"""Elections, positional scoring functions, assignments and their metrics.

Voters and alternatives are dense 0-based indices. A ballot lists a
prefix of a voter's strict ranking; alternatives missing from a truncated
ballot share the bottom position ``m``.
"""

from __future__ import annotations

import enum
import time
from dataclasses import dataclass, field, replace
from fractions import Fraction
from functools import cached_property
from typing import Iterable, Optional, Sequence

import numpy as np


class PreferenceProfile:
    """Rankings of ``n`` voters over ``m`` alternatives.

    Parameters
    ----------
    num_alternatives : int
        The number ``m`` of alternatives.
    rankings : sequence of sequences of int
        One ballot per voter, most preferred first. A ballot may list
        fewer than ``m`` alternatives (a truncated ballot).
    names : sequence of str, optional
        Display names of the alternatives.
    """

    __slots__ = ("_m", "_rankings", "_names", "__dict__")

    def __init__(self, num_alternatives: int, rankings: Iterable[Sequence[int]],
                 names: Optional[Sequence[str]] = None):
        m = int(num_alternatives)
        if m < 1:
            raise ValueError("a profile needs at least one alternative")
        ballots = tuple(tuple(int(a) for a in r) for r in rankings)
        for v, ballot in enumerate(ballots):
            if not ballot:
                raise ValueError(f"voter {v} has an empty ballot")
            if len(set(ballot)) != len(ballot):
                raise ValueError(f"voter {v} ranks an alternative twice")
            if min(ballot) < 0 or max(ballot) >= m:
                raise ValueError(f"voter {v} ranks an alternative outside [0, {m})")
        if names is not None:
            names = tuple(str(x) for x in names)
            if len(names) != m:
                raise ValueError("need exactly one name per alternative")
        self._m = m
        self._rankings = ballots
        self._names = names

    @classmethod
    def from_array(cls, rankings, names=None) -> "PreferenceProfile":
        """Build a complete profile from an ``(n, m)`` array of rankings."""
        arr = np.asarray(rankings, dtype=np.int64)
        if arr.ndim != 2:
            raise ValueError("expected a 2-d array of rankings")
        return cls(arr.shape[1], arr.tolist(), names)

    @property
    def num_voters(self) -> int:
        return len(self._rankings)

    @property
    def num_alternatives(self) -> int:
        return self._m

    @property
    def rankings(self) -> tuple[tuple[int, ...], ...]:
        return self._rankings

    @property
    def names(self) -> Optional[tuple[str, ...]]:
        return self._names

    @property
    def is_complete(self) -> bool:
        return all(len(r) == self._m for r in self._rankings)

    @cached_property
    def positions(self) -> np.ndarray:
        """Read-only ``(n, m)`` array of 1-based positions; unlisted -> ``m``."""
        n, m = self.num_voters, self._m
        pos = np.full((n, m), m, dtype=np.int64)
        for v, ballot in enumerate(self._rankings):
            pos[v, list(ballot)] = np.arange(1, len(ballot) + 1)
        pos.setflags(write=False)
        return pos

    def position_of(self, voter: int, alt: int) -> int:
        if not 0 <= voter < self.num_voters:
            raise ValueError(f"voter index {voter} out of range")
        if not 0 <= alt < self._m:
            raise ValueError(f"alternative index {alt} out of range")
        return int(self.positions[voter, alt])

    def __eq__(self, other):
        if not isinstance(other, PreferenceProfile):
            return NotImplemented
        return self._m == other._m and self._rankings == other._rankings

    def __hash__(self):
        return hash((self._m, self._rankings))

    def __repr__(self):
        kind = "complete" if self.is_complete else "truncated"
        return f"PreferenceProfile(n={self.num_voters}, m={self._m}, {kind})"


def position_of(profile: PreferenceProfile, voter: int, alt: int) -> int:
    """1-based position of ``alt`` in ``voter``'s ballot, ``m`` if unlisted."""
    return profile.position_of(voter, alt)


@dataclass(frozen=True)
class ScoringFunction:
    """Positional scoring function; ``scores[p - 1]`` is the score of position ``p``."""

    scores: tuple[int, ...]
    kind: str = "custom"

    def __post_init__(self):
        object.__setattr__(self, "scores", tuple(int(s) for s in self.scores))
        if not self.scores:
            raise ValueError("a scoring function needs at least one position")

    @classmethod
    def borda_dec(cls, m: int) -> "ScoringFunction":
        return cls(tuple(m - p for p in range(1, m + 1)), "borda_dec")

    @classmethod
    def borda_inc(cls, m: int) -> "ScoringFunction":
        return cls(tuple(p - 1 for p in range(1, m + 1)), "borda_inc")

    @classmethod
    def truncated(cls, m: int, P: int) -> "ScoringFunction":
        """Borda satisfaction on the top ``P`` positions, zero below."""
        if not 1 <= P <= m:
            raise ValueError(f"need 1 <= P <= m, got P={P}, m={m}")
        return cls(tuple(m - p if p <= P else 0 for p in range(1, m + 1)), "truncated")

    @classmethod
    def custom(cls, scores: Sequence[int]) -> "ScoringFunction":
        return cls(tuple(scores), "custom")

    @property
    def m(self) -> int:
        return len(self.scores)

    @property
    def top(self) -> int:
        return self.scores[0]

    @property
    def is_satisfaction(self) -> bool:
        """True for non-increasing scores ending at zero."""
        s = self.scores
        return s[-1] == 0 and all(a >= b for a, b in zip(s, s[1:]))

    def __call__(self, position: int) -> int:
        return self.scores[position - 1]

    def as_array(self) -> np.ndarray:
        return np.asarray(self.scores, dtype=np.int64)


def satisfaction_matrix(profile: PreferenceProfile, psf: ScoringFunction) -> np.ndarray:
    """``(n, m)`` array whose entry ``[v, a]`` is ``psf(pos_v(a))``."""
    if psf.m != profile.num_alternatives:
        raise ValueError(
            f"scoring function has {psf.m} positions, profile has "
            f"{profile.num_alternatives} alternatives")
    return psf.as_array()[profile.positions - 1]


class Variant(enum.Enum):
    MONROE = "monroe"
    CC = "cc"
    GENERAL = "general"


@dataclass(frozen=True)
class ElectionRule:
    """Capacity model of a rule together with the committee size ``K``."""

    variant: Variant
    committee_size: int
    capacities: Optional[tuple[int, ...]] = None

    def __post_init__(self):
        if self.committee_size < 1:
            raise ValueError("committee size must be positive")
        if self.variant is Variant.GENERAL:
            if self.capacities is None:
                raise ValueError("general capacities need a capacity per alternative")
            object.__setattr__(self, "capacities", tuple(int(c) for c in self.capacities))

    @classmethod
    def monroe(cls, K: int) -> "ElectionRule":
        return cls(Variant.MONROE, K)

    @classmethod
    def chamberlin_courant(cls, K: int) -> "ElectionRule":
        return cls(Variant.CC, K)

    @classmethod
    def general(cls, K: int, capacities: Sequence[int]) -> "ElectionRule":
        return cls(Variant.GENERAL, K, tuple(capacities))

    def capacity_bounds(self, n: int) -> tuple[int, int]:
        """(lower, upper) number of voters a used alternative may serve."""
        K = self.committee_size
        if self.variant is Variant.MONROE:
            return n // K, -(-n // K)
        if self.variant is Variant.CC:
            return 0, n
        raise ValueError("general capacities are per alternative")


@dataclass(frozen=True)
class Assignment:
    """Voter -> alternative map; ``None`` marks an unassigned voter."""

    assigned: tuple[Optional[int], ...]

    @classmethod
    def from_array(cls, arr) -> "Assignment":
        """Build from an integer array where negative entries mean unassigned."""
        return cls(tuple(int(a) if a >= 0 else None for a in np.asarray(arr).tolist()))

    def as_array(self) -> np.ndarray:
        return np.array([-1 if a is None else a for a in self.assigned], dtype=np.int64)

    @property
    def num_voters(self) -> int:
        return len(self.assigned)

    @property
    def used_committee(self) -> frozenset:
        return frozenset(a for a in self.assigned if a is not None)

    def load(self) -> dict[int, int]:
        """Number of voters served by each used alternative."""
        out: dict[int, int] = {}
        for a in self.assigned:
            if a is not None:
                out[a] = out.get(a, 0) + 1
        return out

    def is_complete(self) -> bool:
        return all(a is not None for a in self.assigned)


class Metric(enum.Enum):
    L1 = "l1"
    LINF = "l_inf"
    LMIN = "l_min"


def voter_scores(profile: PreferenceProfile, psf: ScoringFunction,
                 assignment: Assignment) -> np.ndarray:
    """Per-voter score; unassigned voters sit at position ``m``."""
    if assignment.num_voters != profile.num_voters:
        raise ValueError("assignment and profile disagree on the number of voters")
    sat = satisfaction_matrix(profile, psf)
    arr = assignment.as_array()
    if arr.size and arr.max() >= profile.num_alternatives:
        raise ValueError("assignment uses an unknown alternative")
    out = np.full(profile.num_voters, psf.scores[-1], dtype=np.int64)
    mask = arr >= 0
    out[mask] = sat[np.flatnonzero(mask), arr[mask]]
    return out


def evaluate(profile: PreferenceProfile, psf: ScoringFunction, assignment: Assignment,
             metric: Metric = Metric.L1) -> int:
    scores = voter_scores(profile, psf, assignment)
    if metric is Metric.L1:
        return int(scores.sum())
    if metric is Metric.LINF:
        return int(scores.max())
    return int(scores.min())


def ideal_satisfaction(profile: PreferenceProfile, psf: ScoringFunction) -> int:
    """Satisfaction if every voter got their top choice: ``n * psf(1)``."""
    return profile.num_voters * psf.top


def delta_min_satisfaction(scores: np.ndarray, delta: float) -> int:
    """Worst score among the best ``ceil((1 - delta) n)`` voters.

    This is the egalitarian value after discarding up to a ``delta``
    fraction of the voters.
    """
    n = len(scores)
    keep = max(1, int(np.ceil((1.0 - delta) * n - 1e-9)))
    ordered = np.sort(np.asarray(scores))[::-1]
    return int(ordered[keep - 1])


def _ratio(num: int, den: int) -> Optional[Fraction]:
    return Fraction(num, den) if den else None


@dataclass(frozen=True)
class EvaluationReport:
    l1: int
    l_inf: int
    l_min: int
    ideal: int
    ratio_to_ideal: Optional[Fraction]
    ratio_to_opt: Optional[Fraction] = None


def evaluation_report(profile, psf, assignment, opt: Optional[int] = None) -> EvaluationReport:
    s = voter_scores(profile, psf, assignment)
    ideal = ideal_satisfaction(profile, psf)
    l1 = int(s.sum())
    return EvaluationReport(l1, int(s.max()), int(s.min()), ideal, _ratio(l1, ideal),
                            None if opt is None else _ratio(l1, opt))


@dataclass(frozen=True)
class SolutionReport:
    """Result of a winner-determination algorithm.

    ``wall_time`` is excluded from equality so that repeated runs compare
    equal.
    """

    algorithm: str
    committee: tuple[int, ...]
    assignment: Assignment
    l1: int
    l_inf: int
    l_min: int
    ideal: int
    ratio_to_ideal: Optional[Fraction]
    ratio_to_opt: Optional[Fraction] = None
    seed: Optional[int] = None
    params: dict = field(default_factory=dict)
    wall_time: float = field(default=0.0, compare=False)

    def with_opt(self, opt: int) -> "SolutionReport":
        return replace(self, ratio_to_opt=_ratio(self.l1, opt))

    def to_dict(self) -> dict:
        def dec(x):
            return None if x is None else float(x)

        return {
            "algorithm": self.algorithm,
            "committee": list(self.committee),
            "assignment": [a for a in self.assignment.assigned],
            "l1": self.l1,
            "l_inf": self.l_inf,
            "l_min": self.l_min,
            "ideal": self.ideal,
            "ratio_to_ideal": dec(self.ratio_to_ideal),
            "ratio_to_opt": dec(self.ratio_to_opt),
            "seed": self.seed,
            "params": dict(self.params),
            "wall_time": self.wall_time,
        }


def make_report(profile, psf, assignment: Assignment, algorithm: str, started: float,
                committee: Optional[Iterable[int]] = None, seed: Optional[int] = None,
                **params) -> SolutionReport:
    """Evaluate ``assignment`` and package it; ``started`` is a ``perf_counter`` stamp."""
    ev = evaluation_report(profile, psf, assignment)
    members = assignment.used_committee if committee is None else committee
    return SolutionReport(
        algorithm=algorithm,
        committee=tuple(sorted(int(a) for a in members)),
        assignment=assignment,
        l1=ev.l1,
        l_inf=ev.l_inf,
        l_min=ev.l_min,
        ideal=ev.ideal,
        ratio_to_ideal=ev.ratio_to_ideal,
        seed=seed,
        params=params,
        wall_time=time.perf_counter() - started,
    )
