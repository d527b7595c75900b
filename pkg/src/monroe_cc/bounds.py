"""Closed-form approximation guarantees and the special functions they need.

All ratio bounds are fractions of the ideal satisfaction ``n (m - 1)``
unless stated otherwise. Where a formula can go negative the raw value
is returned; :class:`BoundReport` keeps both the raw and the clamped value.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

from scipy.optimize import brentq


@dataclass(frozen=True)
class BoundReport:
    name: str
    params: dict = field(default_factory=dict)
    raw: float = 0.0
    is_ratio: bool = True

    @property
    def value(self) -> float:
        return min(max(self.raw, 0.0), 1.0) if self.is_ratio else self.raw


def harmonic(K: int) -> Fraction:
    if K < 1:
        raise ValueError("harmonic number needs K >= 1")
    return sum((Fraction(1, i) for i in range(1, K + 1)), Fraction(0))


def lambert_w(y: float, tol: float = 1e-12, max_iter: int = 100) -> float:
    """Principal branch of Lambert's W for ``y >= 0``.

    Damped Newton iteration on ``w e^w - y`` started from ``log(1 + y)``;
    stops once the residual is below ``tol`` (relative to ``y`` when
    ``y > 1``).
    """
    if y < 0:
        raise ValueError("lambert_w is only defined here for nonnegative input")
    if y == 0:
        return 0.0
    w = math.log1p(y)
    scale = max(1.0, y)
    for _ in range(max_iter):
        ew = math.exp(w)
        f = w * ew - y
        if abs(f) <= tol * scale:
            break
        step = f / (ew * (w + 1.0))
        # halve the step until the residual stops growing
        t = 1.0
        while t > 1e-6:
            cand = w - t * step
            if cand > -1.0 and abs(cand * math.exp(cand) - y) < abs(f):
                break
            t *= 0.5
        else:
            break  # at floating-point resolution
        w = cand
    return w


def monroe_greedy_bound(m: int, K: int) -> float:
    """Guarantee of the greedy Monroe algorithm: ``1 - (K-1)/(2(m-1)) - H_K/K``."""
    if K < 1 or m < 2:
        raise ValueError("need K >= 1 and m >= 2")
    return 1.0 - (K - 1) / (2 * (m - 1)) - float(harmonic(K)) / K


def _monroe_round_bound(m: int, K: int, P: int, i: int) -> float:
    # Per-round satisfaction lower bound divided by n; guards evaluated on reals.
    if i + (m - i) / (K - i) <= P:
        return (m - i - (m - i) / (K - i)) / K
    if (2 * P - m) >= i >= (K - 2):
        return (K - i) * (m - i) / 4 / K
    return (m - P) * (K - i) * (P - i) / (m - i) / K


def monroe_truncated_bound(m: int, K: int, P: int) -> float:
    """Greedy Monroe guarantee when only the top ``P`` positions are known."""
    if not 1 <= P <= m or K < 1 or m < 2:
        raise ValueError("need 1 <= P <= m, K >= 1 and m >= 2")
    total = sum(max(_monroe_round_bound(m, K, P, i), 0.0) for i in range(K))
    return total / (m - 1)


def sampling_expected_ratio(m: int, K: int) -> float:
    """Expected ratio of one uniformly sampled committee under Borda Monroe."""
    return 0.5 * (1 + K / m - K ** 2 / (m ** 2 - m) + K ** 3 / (m ** 3 - m ** 2))


def sampling_failure_prob(K: int, epsilon: float) -> float:
    """Bound ``exp(-K eps^2 / 128)`` on a sample deviating by more than ``eps``."""
    if K < 8:
        raise ValueError("the deviation bound holds for K >= 8 only")
    return math.exp(-K * epsilon ** 2 / 128)


def ar_sample_count(K: int, epsilon: float, lam: float) -> int:
    """Number of samples the combined algorithm draws: ``ceil(-512 ln(1-lam) / (K eps^2))``."""
    if not 0 < lam < 1 or not 0 < epsilon < 1:
        raise ValueError("need 0 < epsilon < 1 and 0 < lambda < 1")
    return math.ceil(-512 * math.log(1 - lam) / (K * epsilon ** 2))


def sampling_crossover() -> tuple[float, float]:
    """Committee fraction ``x = K/m`` where sampling and greedy guarantees meet.

    Solves ``1 + x - x^2 + x^3 = 2 - x`` on ``(0, 1)`` and returns
    ``(x, 1 - x/2)``.
    """
    x = brentq(lambda t: t ** 3 - t ** 2 + 2 * t - 1, 0.0, 1.0, xtol=1e-14)
    return x, 1 - x / 2


def cc_sampling_expected_ratio(m: int, K: int) -> float:
    return (1 - 1 / (K + 1)) * (1 + 1 / m)


def cc_p_bound(K: int) -> float:
    """Guarantee ``1 - 2 W(K)/K`` of the top-``x`` covering algorithm for CC."""
    if K < 1:
        raise ValueError("need K >= 1")
    return 1.0 - 2 * lambert_w(K) / K


def cc_p_window(m: int, K: int) -> int:
    """Covering window ``ceil(m W(K) / K)``, clipped to ``[1, m]``."""
    return min(m, max(1, math.ceil(m * lambert_w(K) / K - 1e-12)))


def cc_truncated_bound(m: int, K: int, Q: int) -> float:
    """Guarantee ``(m-Q)/(m-1) (1 - exp(-QK/m))`` with a window of ``Q`` positions."""
    if not 1 <= Q <= m or m < 2:
        raise ValueError("need 1 <= Q <= m and m >= 2")
    return (m - Q) / (m - 1) * (1 - math.exp(-Q * K / m))


def cc_truncated_window_limit(m: int, K: int) -> float:
    """Largest ``Q`` for which :func:`cc_truncated_bound` is claimed: ``m W(K) / K``."""
    return m * lambert_w(K) / K


def cc_delta_x(m: int, K: int, delta: float) -> int:
    """Window ``ceil(-m ln(delta) / K)`` for the delta-egalitarian variant, in ``[1, m]``."""
    if not 0 < delta < 1:
        raise ValueError("delta must lie in (0, 1)")
    return min(m, max(1, math.ceil(-m * math.log(delta) / K - 1e-12)))


def cc_delta_bound(K: int, delta: float) -> float:
    """Claimed ratio ``1 + ln(delta)/K`` for the delta-egalitarian metric."""
    return 1 + math.log(delta) / K


def cc_ptas_uses_greedy(K: int, epsilon: float) -> bool:
    """Whether the covering algorithm alone already meets ratio ``1 - epsilon``."""
    return 2 * lambert_w(K) / K <= epsilon


REGISTRY = {
    "monroe-greedy": (monroe_greedy_bound, ("m", "K"), True),
    "monroe-truncated": (monroe_truncated_bound, ("m", "K", "P"), True),
    "sampling-ratio": (sampling_expected_ratio, ("m", "K"), True),
    "sampling-failure": (sampling_failure_prob, ("K", "epsilon"), False),
    "ar-samples": (ar_sample_count, ("K", "epsilon", "lam"), False),
    "cc-p": (cc_p_bound, ("K",), True),
    "cc-truncated": (cc_truncated_bound, ("m", "K", "Q"), True),
    "cc-delta-x": (cc_delta_x, ("m", "K", "delta"), False),
    "cc-sampling-ratio": (cc_sampling_expected_ratio, ("m", "K"), True),
}


def compute_bound(name: str, **params) -> BoundReport:
    """Evaluate a named bound from :data:`REGISTRY`."""
    if name == "crossover":
        x, r = sampling_crossover()
        return BoundReport(name, {"x": x}, r)
    try:
        fn, names, is_ratio = REGISTRY[name]
    except KeyError:
        raise ValueError(f"unknown bound {name!r}") from None
    missing = [p for p in names if params.get(p) is None]
    if missing:
        raise ValueError(f"bound {name!r} needs parameters: {', '.join(missing)}")
    args = {p: params[p] for p in names}
    return BoundReport(name, args, float(fn(**args)), is_ratio)
