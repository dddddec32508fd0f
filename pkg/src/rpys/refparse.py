"""Structured parsing of abbreviated cited-reference strings.

A reference string such as ``"DARWIN C, 1859, ORIGIN SPECIES, P1"`` is split on
the exact separator ``", "``. The first segment that is four decimal digits and
lies in ``[1500, max_year]`` is the reference publication year; the segment
before it is the first author and the one after it the source. Trailing
``V<n>``, ``P<n>`` and ``DOI ...`` segments are picked up as volume, page and
DOI. Nothing here raises on dirty input; bad strings get a degraded status.
"""

from __future__ import annotations

import datetime
import enum
import re
from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from typing import Iterator

MIN_REFERENCE_YEAR = 1500
SEPARATOR = ", "

_YEAR_RE = re.compile(r"[0-9]{4}")
_VOLUME_RE = re.compile(r"V([0-9]+)")
_PAGE_RE = re.compile(r"P([0-9]+)")
_ASCII_LOWER = str.maketrans("abcdefghijklmnopqrstuvwxyz", "ABCDEFGHIJKLMNOPQRSTUVWXYZ")


class Status(str, enum.Enum):
    PARSED = "Parsed"
    NO_YEAR = "NoYear"
    MALFORMED = "Malformed"


def default_max_year() -> int:
    return datetime.date.today().year + 1


@dataclass(frozen=True)
class CitedReference:
    raw: str
    status: Status
    author_norm: str | None = None
    year: int | None = None
    source_norm: str | None = None
    volume: int | None = None
    page: int | None = None
    doi: str | None = None


def normalize(s: str) -> str:
    """Uppercase ASCII letters, drop periods, collapse whitespace.

    >>> normalize("Lack  D.")
    'LACK D'
    """
    return " ".join(s.replace(".", "").translate(_ASCII_LOWER).split())


def parse_reference(raw: str, max_year: int | None = None) -> CitedReference:
    if not raw or not raw.strip():
        raise ValueError("reference string must be non-empty")
    if max_year is None:
        max_year = default_max_year()

    segments = raw.split(SEPARATOR)
    year_idx = None
    for i, seg in enumerate(segments):
        if _YEAR_RE.fullmatch(seg) and MIN_REFERENCE_YEAR <= int(seg) <= max_year:
            year_idx = i
            break

    if year_idx is None:
        author = normalize(segments[0]) or None
        return CitedReference(raw, Status.NO_YEAR, author_norm=author)

    author = normalize(segments[0]) if year_idx > 0 else ""
    tail = segments[year_idx + 1:]
    source = normalize(tail[0]) if tail else ""
    volume = page = doi = None
    for seg in tail[1:]:
        if volume is None and (m := _VOLUME_RE.fullmatch(seg)):
            volume = int(m.group(1))
        elif page is None and (m := _PAGE_RE.fullmatch(seg)):
            page = int(m.group(1))
        elif doi is None and seg.startswith("DOI "):
            doi = seg[4:].strip() or None

    status = Status.PARSED if (author or source) else Status.MALFORMED
    return CitedReference(
        raw,
        status,
        author_norm=author or None,
        year=int(segments[year_idx]),
        source_norm=source or None,
        volume=volume,
        page=page,
        doi=doi,
    )


@dataclass(frozen=True)
class ParseResult:
    """Output of :func:`parse_all`: ordered ``(record_id, CitedReference)`` pairs
    plus per-status tallies."""

    pairs: tuple[tuple[str, CitedReference], ...]
    tallies: dict

    def __iter__(self) -> Iterator[tuple[str, CitedReference]]:
        return iter(self.pairs)

    def __len__(self):
        return len(self.pairs)

    @property
    def parsed(self):
        return [(rid, ref) for rid, ref in self.pairs if ref.status is Status.PARSED]


def _parse_record(args):
    record_id, raws, max_year = args
    return [(record_id, parse_reference(r, max_year)) for r in raws]


def parse_all(corpus, max_year: int | None = None, n_jobs: int = 1) -> ParseResult:
    """Parse every raw reference of every record, preserving order.

    ``n_jobs > 1`` fans records out to worker processes; results are
    reassembled in record order so output does not depend on the worker count.
    """
    if max_year is None:
        max_year = default_max_year()
    work = [(rec.record_id, rec.raw_references, max_year) for rec in corpus.records]
    if n_jobs > 1 and len(work) > 1:
        chunksize = max(1, len(work) // (4 * n_jobs))
        with ProcessPoolExecutor(max_workers=n_jobs) as pool:
            chunks = list(pool.map(_parse_record, work, chunksize=chunksize))
    else:
        chunks = [_parse_record(w) for w in work]
    pairs = tuple(p for chunk in chunks for p in chunk)
    counts = Counter(ref.status for _, ref in pairs)
    tallies = {s.value: counts.get(s, 0) for s in Status}
    return ParseResult(pairs, tallies)
