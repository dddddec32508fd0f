"""Grouping of parsed references into cited works."""

from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass
from itertools import groupby
from typing import Iterable, NamedTuple

from .refparse import CitedReference, Status


class WorkKey(NamedTuple):
    """Identity proxy for a cited work. Missing author or source is ``""``."""

    author_norm: str
    year: int
    source_norm: str

    def label(self) -> str:
        text = f"{self.author_norm or '?'} ({self.year})"
        return f"{text} {self.source_norm}" if self.source_norm else text


@dataclass(frozen=True)
class WorkCluster:
    canonical_key: WorkKey
    member_keys: frozenset
    citing_records: frozenset
    occurrences: int
    by_occurrence: bool = False

    @property
    def count(self) -> int:
        """Citing records (default) or raw citation occurrences."""
        return self.occurrences if self.by_occurrence else len(self.citing_records)

    @property
    def year(self) -> int:
        return self.canonical_key.year

    def merge(self, other: "WorkCluster") -> "WorkCluster":
        members = self.member_keys | other.member_keys
        return WorkCluster(
            canonical_key=min(members),
            member_keys=members,
            citing_records=self.citing_records | other.citing_records,
            occurrences=self.occurrences + other.occurrences,
            by_occurrence=self.by_occurrence,
        )


def work_key(ref: CitedReference) -> WorkKey:
    return WorkKey(ref.author_norm or "", ref.year, ref.source_norm or "")


def cluster_exact(refs: Iterable[tuple[str, CitedReference]],
                  count_multiplicity: bool = False) -> list[WorkCluster]:
    """One cluster per distinct :class:`WorkKey` among Parsed references.

    By default a citing record contributes at most once to a work's count;
    ``count_multiplicity=True`` counts every occurrence instead.
    Output is sorted by canonical key.
    """
    records = defaultdict(set)
    occurrences = defaultdict(int)
    for record_id, ref in refs:
        if ref.status is not Status.PARSED:
            continue
        key = work_key(ref)
        records[key].add(record_id)
        occurrences[key] += 1
    return [
        WorkCluster(key, frozenset([key]), frozenset(records[key]), occurrences[key],
                    count_multiplicity)
        for key in sorted(records)
    ]


def levenshtein(a: str, b: str) -> int:
    if len(a) < len(b):
        a, b = b, a
    prev = list(range(len(b) + 1))
    for i, ca in enumerate(a, start=1):
        cur = [i]
        for j, cb in enumerate(b, start=1):
            cur.append(min(prev[j] + 1, cur[j - 1] + 1, prev[j - 1] + (ca != cb)))
        prev = cur
    return prev[-1]


def _linked(x: WorkCluster, y: WorkCluster, threshold: int) -> bool:
    # Single linkage over member sources: the fixpoint is then independent of
    # merge order and monotone in the threshold.
    return any(
        levenshtein(kx.source_norm, ky.source_norm) <= threshold
        for kx in sorted(x.member_keys)
        for ky in sorted(y.member_keys)
    )


def cluster_fuzzy(clusters: Iterable[WorkCluster], threshold: int) -> list[WorkCluster]:
    """Merge clusters sharing author and year whose sources are within
    ``threshold`` edit operations, until no pair qualifies.

    Pairs are visited in canonical-key order and the scan restarts after
    every merge.
    """
    if threshold < 0:
        raise ValueError("threshold must be >= 0")
    ordered = sorted(clusters, key=lambda c: c.canonical_key)
    if threshold == 0:
        return ordered

    out = []
    for _, group in groupby(ordered, key=lambda c: c.canonical_key[:2]):
        group = list(group)
        merged = True
        while merged:
            merged = False
            for i in range(len(group)):
                for j in range(i + 1, len(group)):
                    if _linked(group[i], group[j], threshold):
                        group[i] = group[i].merge(group[j])
                        del group[j]
                        group.sort(key=lambda c: c.canonical_key)
                        merged = True
                        break
                if merged:
                    break
        out.extend(group)
    out.sort(key=lambda c: c.canonical_key)
    return out
