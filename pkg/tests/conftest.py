import itertools

import numpy as np
import pytest
from hypothesis import strategies as st

from monroe_cc import PreferenceProfile, ScoringFunction


@st.composite
def profiles(draw, n=(1, 8), m=(1, 6), complete=True):
    """Random profile with ``n`` voters and ``m`` alternatives in the given ranges."""
    nv = draw(st.integers(*n))
    ma = draw(st.integers(*m))
    perm = st.permutations(list(range(ma)))
    rows = []
    for _ in range(nv):
        r = draw(perm)
        if not complete:
            r = r[:draw(st.integers(1, ma))]
        rows.append(tuple(r))
    return PreferenceProfile(ma, rows)


def random_profile(rng, n, m):
    return PreferenceProfile.from_array([rng.permutation(m) for _ in range(n)])


def borda(p):
    return ScoringFunction.borda_dec(p.num_alternatives)


def brute_assignment_value(profile, psf, S, lo, hi):
    """Best total over every map of voters into ``S`` with loads in ``[lo, hi]``.

    Pure Python, no shared code with the library beyond reading ballots.
    """
    m = profile.num_alternatives
    best = None
    for choice in itertools.product(S, repeat=profile.num_voters):
        loads = [choice.count(a) for a in S]
        if any(c < lo or c > hi for c in loads):
            continue
        total = 0
        for v, a in enumerate(choice):
            r = profile.rankings[v]
            pos = r.index(a) + 1 if a in r else m
            total += psf.scores[pos - 1]
        best = total if best is None else max(best, total)
    return best


def brute_committee_value(profile, psf, K, monroe):
    n = profile.num_voters
    lo, hi = (n // K, -(-n // K)) if monroe else (0, n)
    return max(v for S in itertools.combinations(range(profile.num_alternatives), K)
               if (v := brute_assignment_value(profile, psf, S, lo, hi)) is not None)


@pytest.fixture
def three_voters():
    # a>b>c, a>c>b, b>a>c with a=0, b=1, c=2
    return PreferenceProfile(3, [(0, 1, 2), (0, 2, 1), (1, 0, 2)])


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


_RESULTS = pytest.StashKey[list]()


@pytest.fixture
def criterion(request):
    """Record one acceptance line; the test should then assert ``ok``."""
    lines = request.config.stash.setdefault(_RESULTS, [])

    def record(name, ok, detail):
        line = f"[{'PASS' if ok else 'FAIL'}] criterion {name}: {detail}"
        lines.append(line)
        print(line)
        return ok

    return record


def pytest_terminal_summary(terminalreporter, config):
    lines = config.stash.get(_RESULTS, [])
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in lines:
            terminalreporter.write_line(line)
