"""Peak detection on the deviation series and attribution to cited works."""

from __future__ import annotations

from dataclasses import dataclass, replace
from fractions import Fraction

from .exceptions import NoClustersAtYear


@dataclass(frozen=True)
class Peak:
    year: int
    count: int
    deviation: float
    top_clusters: tuple = ()

    @property
    def top_count(self) -> int | None:
        return self.top_clusters[0][1] if self.top_clusters else None

    @property
    def top_share(self) -> float | None:
        """Share of the year's citations going to its most-cited work."""
        if not self.top_clusters:
            return None
        return self.top_count / self.count

    @property
    def top_share_fraction(self) -> Fraction | None:
        if not self.top_clusters:
            return None
        return Fraction(self.top_count, self.count)


def detect_peaks(spectrum, cfg) -> list[Peak]:
    """Years whose signed deviation is a positive local maximum and whose
    count reaches ``cfg.min_peak_count``.

    A run of equal deviations (a plateau) counts as one maximum reported at
    its first year, provided the value after the run is lower. Neighbours
    outside the range behave as minus infinity. The signed series is used
    whatever ``deviation_mode`` the spectrum was built with.
    """
    dev = spectrum.signed_deviations
    counts = spectrum.counts
    n = len(dev)
    peaks = []
    i = 0
    while i < n:
        j = i
        while j + 1 < n and dev[j + 1] == dev[i]:
            j += 1
        rises = i == 0 or dev[i - 1] < dev[i]
        falls = j == n - 1 or dev[j + 1] < dev[i]
        if rises and falls and dev[i] > 0 and counts[i] >= cfg.min_peak_count:
            peaks.append(Peak(spectrum.min_year + i, int(counts[i]), float(spectrum.deviations[i])))
        i = j + 1
    return peaks


def attribute_peak(peak: Peak, clusters, k: int = 5) -> Peak:
    """Attach the ``k`` most-cited works of ``peak.year``.

    Ties in count are broken by canonical key so the ranking is stable.
    """
    if k < 1:
        raise ValueError("k must be >= 1")
    at_year = [c for c in clusters if c.canonical_key.year == peak.year]
    if not at_year:
        raise NoClustersAtYear(f"no work clusters at peak year {peak.year}")
    ranked = sorted(at_year, key=lambda c: (-c.count, c.canonical_key))
    return replace(peak, top_clusters=tuple((c, c.count) for c in ranked[:k]))
