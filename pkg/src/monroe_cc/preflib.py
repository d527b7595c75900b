"""Reading and writing PrefLib SOC / SOI files.

Both the current format (``# KEY: value`` headers, ``count: a,b,c``
ballots) and the legacy one (alternative count, name table, voter summary
line, ``count,a,b,c`` ballots) are read; writing always uses the current
format. Alternatives are 1-based in files and 0-based in memory.
"""

from __future__ import annotations

import io
import os
import re
from typing import Iterable, TextIO, Union

from .core import PreferenceProfile

PathOrFile = Union[str, os.PathLike, TextIO]

_ALT_NAME = re.compile(r"ALTERNATIVE NAME (\d+)$")


class ProfileParseError(ValueError):
    def __init__(self, message: str, line: int):
        super().__init__(f"line {line}: {message}")
        self.line = line


def _lines(source: PathOrFile) -> list[str]:
    if hasattr(source, "read"):
        return source.read().splitlines()
    with open(source, encoding="utf-8") as fh:
        return fh.read().splitlines()


def _parse_ballot(text: str, m: int, lineno: int) -> tuple[int, ...]:
    if "{" in text or "}" in text:
        raise ProfileParseError("ties between alternatives are not supported", lineno)
    try:
        ballot = tuple(int(tok) - 1 for tok in text.split(",") if tok.strip())
    except ValueError:
        raise ProfileParseError(f"malformed ballot {text.strip()!r}", lineno) from None
    if not ballot:
        raise ProfileParseError("empty ballot", lineno)
    for a in ballot:
        if not 0 <= a < m:
            raise ProfileParseError(f"alternative {a + 1} is outside 1..{m}", lineno)
    if len(set(ballot)) != len(ballot):
        raise ProfileParseError("alternative listed twice in one ballot", lineno)
    return ballot


def read_profile(source: PathOrFile) -> PreferenceProfile:
    """Parse a SOC or SOI file into an expanded profile (one entry per voter).

    Raises
    ------
    ProfileParseError
        On a malformed header, an out-of-range or repeated alternative, or
        a malformed ballot line; the message carries the line number.
    """
    lines = _lines(source)
    first = next((ln for ln in lines if ln.strip()), "")
    if first.startswith("#"):
        return _read_modern(lines)
    return _read_legacy(lines)


def _read_modern(lines: list[str]) -> PreferenceProfile:
    m = None
    names: dict[int, str] = {}
    ballots: list[tuple[int, ...]] = []
    for lineno, raw in enumerate(lines, start=1):
        line = raw.strip()
        if not line:
            continue
        if line.startswith("#"):
            key, sep, value = line[1:].partition(":")
            if not sep:
                continue
            key, value = key.strip().upper(), value.strip()
            if key == "NUMBER ALTERNATIVES":
                try:
                    m = int(value)
                except ValueError:
                    raise ProfileParseError(f"bad alternative count {value!r}", lineno) from None
                if m < 1:
                    raise ProfileParseError("alternative count must be positive", lineno)
            elif _ALT_NAME.match(key):
                names[int(_ALT_NAME.match(key).group(1))] = value
            continue
        if m is None:
            raise ProfileParseError("ballot before the NUMBER ALTERNATIVES header", lineno)
        count, sep, rest = line.partition(":")
        if not sep:
            raise ProfileParseError("expected 'count: ballot'", lineno)
        try:
            k = int(count)
        except ValueError:
            raise ProfileParseError(f"bad ballot count {count!r}", lineno) from None
        if k < 0:
            raise ProfileParseError("negative ballot count", lineno)
        ballots.extend([_parse_ballot(rest, m, lineno)] * k)
    if m is None:
        raise ProfileParseError("missing NUMBER ALTERNATIVES header", len(lines))
    return _build(m, ballots, names)


def _read_legacy(lines: list[str]) -> PreferenceProfile:
    body = [(i, ln.strip()) for i, ln in enumerate(lines, start=1) if ln.strip()]
    if not body:
        raise ProfileParseError("empty file", 1)
    lineno, head = body[0]
    try:
        m = int(head)
    except ValueError:
        raise ProfileParseError(f"expected the number of alternatives, got {head!r}", lineno) \
            from None
    if len(body) < m + 2:
        raise ProfileParseError("truncated header", body[-1][0])
    names = {}
    for lineno, line in body[1:m + 1]:
        idx, sep, name = line.partition(",")
        if not sep or not idx.strip().isdigit():
            raise ProfileParseError("expected 'index,name'", lineno)
        names[int(idx)] = name.strip()
    lineno, summary = body[m + 1]
    if len(summary.split(",")) != 3:
        raise ProfileParseError("expected 'voters,sum of counts,unique orders'", lineno)
    ballots: list[tuple[int, ...]] = []
    for lineno, line in body[m + 2:]:
        count, sep, rest = line.partition(",")
        if not sep or not count.strip().isdigit():
            raise ProfileParseError("expected 'count,ballot'", lineno)
        ballots.extend([_parse_ballot(rest, m, lineno)] * int(count))
    return _build(m, ballots, names)


def _build(m: int, ballots, names: dict[int, str]) -> PreferenceProfile:
    full = None
    if names and len(names) == m and set(names) == set(range(1, m + 1)):
        full = [names[i] for i in range(1, m + 1)]
    return PreferenceProfile(m, ballots, full)


def group_ballots(rankings: Iterable[tuple[int, ...]]) -> list[tuple[tuple[int, ...], int]]:
    """Identical ballots with their multiplicity, in order of first appearance."""
    counts: dict[tuple[int, ...], int] = {}
    for r in rankings:
        counts[r] = counts.get(r, 0) + 1
    return list(counts.items())


def write_profile(profile: PreferenceProfile, sink: PathOrFile, title: str = "") -> None:
    """Write ``profile`` as SOC (complete ballots) or SOI (truncated ballots)."""
    kind = "soc" if profile.is_complete else "soi"
    groups = group_ballots(profile.rankings)
    names = profile.names or [f"a{j}" for j in range(profile.num_alternatives)]
    out = io.StringIO()
    if title:
        out.write(f"# TITLE: {title}\n")
    out.write(f"# DATA TYPE: {kind}\n")
    out.write(f"# NUMBER ALTERNATIVES: {profile.num_alternatives}\n")
    out.write(f"# NUMBER VOTERS: {profile.num_voters}\n")
    out.write(f"# NUMBER UNIQUE ORDERS: {len(groups)}\n")
    for j, name in enumerate(names, start=1):
        out.write(f"# ALTERNATIVE NAME {j}: {name}\n")
    for ballot, count in groups:
        out.write(f"{count}: " + ",".join(str(a + 1) for a in ballot) + "\n")
    text = out.getvalue()
    if hasattr(sink, "write"):
        sink.write(text)
    else:
        with open(sink, "w", encoding="utf-8") as fh:
            fh.write(text)
