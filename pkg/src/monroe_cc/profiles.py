"""Synthetic preference profiles, Kendall tau distance and ballot truncation.

Every generator draws from ``numpy.random.Generator(Philox(seed))``, a
counter-based bit generator, so a ``(config, seed)`` pair always yields
the same profile.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .core import PreferenceProfile

MODELS = ("ic", "urn", "mallows")


@dataclass(frozen=True)
class GeneratorConfig:
    """Parameters of a synthetic election.

    ``urn_alpha_ratio`` is the number of copies returned to the urn,
    measured in units of the initial ``m!`` orders. ``urn_extra_copies``
    adds (or with -1 removes) single ballots to the per-draw growth, to
    model the other readings of "return a copies".
    """

    model: str = "ic"
    n: int = 100
    m: int = 10
    seed: int = 0
    urn_alpha_ratio: float = 0.05
    urn_extra_copies: int = 0
    mixture_components: int = 5

    def __post_init__(self):
        if self.model not in MODELS:
            raise ValueError(f"unknown model {self.model!r}; expected one of {MODELS}")
        if self.n < 1 or self.m < 1:
            raise ValueError("need n >= 1 and m >= 1")
        if self.urn_alpha_ratio < 0:
            raise ValueError("urn_alpha_ratio must be nonnegative")
        if self.mixture_components < 1:
            raise ValueError("mixture needs at least one component")


def make_rng(seed) -> np.random.Generator:
    return np.random.Generator(np.random.Philox(seed))


def generate(config: GeneratorConfig) -> PreferenceProfile:
    if config.model == "ic":
        return gen_impartial_culture(config)
    if config.model == "urn":
        return gen_urn(config)
    return gen_mallows_mixture(config)


def _uniform_rankings(rng, n, m) -> np.ndarray:
    return rng.permuted(np.tile(np.arange(m), (n, 1)), axis=1)


def gen_impartial_culture(config: GeneratorConfig) -> PreferenceProfile:
    rng = make_rng(config.seed)
    return PreferenceProfile.from_array(_uniform_rankings(rng, config.n, config.m))


def urn_fresh_probability(t: int, ratio: float, per_copy: float = 0.0) -> float:
    """Chance that draw ``t`` (0-based) is a fresh uniform order."""
    return 1.0 / (1.0 + t * (ratio + per_copy))


def gen_urn(config: GeneratorConfig) -> PreferenceProfile:
    """Polya-Eggenberger urn.

    The urn starts with every order once (weight ``m!``); each drawn
    ballot goes back with ``a = ratio * m!`` extra copies. Draw ``t`` is
    therefore fresh with probability ``1 / (1 + t * ratio)`` and otherwise
    copies one of the ``t`` earlier ballots uniformly at random.
    """
    rng = make_rng(config.seed)
    n, m = config.n, config.m
    per_copy = 0.0
    if config.urn_extra_copies and m <= 170:
        per_copy = config.urn_extra_copies / math.factorial(m)
    fresh = _uniform_rankings(rng, n, m)
    u = rng.random(n)
    picks = rng.random(n)
    out = np.empty((n, m), dtype=np.int64)
    for t in range(n):
        if u[t] < urn_fresh_probability(t, config.urn_alpha_ratio, per_copy):
            out[t] = fresh[t]
        else:
            out[t] = out[int(picks[t] * t)]
    return PreferenceProfile.from_array(out)


def insertion_cdfs(m: int, phi: float) -> list[np.ndarray]:
    """Cumulative insertion weights: step ``j`` puts item ``j`` at slot ``p``
    (1-based, ``p <= j``) with weight ``phi**(j - p)``."""
    out = []
    for j in range(1, m + 1):
        w = np.power(float(phi), np.arange(j - 1, -1, -1, dtype=float))
        out.append(np.cumsum(w))
    return out


def sample_mallows(center: Sequence[int], phi: float, u: np.ndarray,
                   cdfs: list[np.ndarray] | None = None) -> list[int]:
    """Repeated insertion draw from Mallows(center, phi) using uniforms ``u``."""
    m = len(center)
    cdfs = insertion_cdfs(m, phi) if cdfs is None else cdfs
    ranking: list[int] = []
    for j in range(m):
        c = cdfs[j]
        slot = int(np.searchsorted(c, u[j] * c[-1], side="right"))
        ranking.insert(min(slot, j), int(center[j]))
    return ranking


def gen_mallows_mixture(config: GeneratorConfig) -> PreferenceProfile:
    """Mixture of Mallows models with random weights, dispersions and centers."""
    rng = make_rng(config.seed)
    n, m, ell = config.n, config.m, config.mixture_components
    weights = rng.dirichlet(np.ones(ell))
    phis = rng.random(ell)
    centers = _uniform_rankings(rng, ell, m)
    comp = rng.choice(ell, size=n, p=weights)
    u = rng.random((n, m))
    cdfs = [insertion_cdfs(m, p) for p in phis]
    rows = [sample_mallows(centers[c], phis[c], u[v], cdfs[c]) for v, c in enumerate(comp)]
    return PreferenceProfile.from_array(rows)


def mallows_profile(n: int, center: Sequence[int], phi: float, seed: int) -> PreferenceProfile:
    """Single-component Mallows profile around ``center``."""
    rng = make_rng(seed)
    cdfs = insertion_cdfs(len(center), phi)
    u = rng.random((n, len(center)))
    return PreferenceProfile.from_array([sample_mallows(center, phi, u[v], cdfs)
                                         for v in range(n)])


def kendall_tau(r1: Sequence[int], r2: Sequence[int]) -> int:
    """Number of alternative pairs the two rankings order differently."""
    if sorted(r1) != sorted(r2):
        raise ValueError("rankings must be complete orders of the same alternatives")
    where = {a: i for i, a in enumerate(r2)}
    seq = np.array([where[a] for a in r1])
    return int(sum((seq[i + 1:] < seq[i]).sum() for i in range(len(seq))))


def truncate_profile(profile: PreferenceProfile, P: int) -> PreferenceProfile:
    """Keep only the top ``P`` entries of every ballot."""
    if not 1 <= P <= profile.num_alternatives:
        raise ValueError(f"need 1 <= P <= m, got P={P}")
    return PreferenceProfile(profile.num_alternatives, [r[:P] for r in profile.rankings],
                             profile.names)
