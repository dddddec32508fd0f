"""Per-year citation counts and their deviation from a windowed median."""

from __future__ import annotations

import enum
from dataclasses import dataclass

import numpy as np

from .exceptions import EmptyRange


class DeviationMode(str, enum.Enum):
    SIGNED = "signed"
    ABSOLUTE = "absolute"


@dataclass(frozen=True)
class AnalysisConfig:
    """Knobs of an RPYS run.

    The defaults reproduce the Darwin-finches setup: years 1800-1960, a
    five-year median window (``window_halfwidth=2``) and at least 10
    citations for a peak year.
    """

    min_year: int = 1800
    max_year: int = 1960
    window_halfwidth: int = 2
    min_peak_count: int = 10
    deviation_mode: DeviationMode = DeviationMode.SIGNED
    count_multiplicity: bool = False
    fuzzy_threshold: int = 0
    top_k: int = 5

    def __post_init__(self):
        object.__setattr__(self, "deviation_mode", DeviationMode(self.deviation_mode))
        if self.min_year > self.max_year:
            raise ValueError(f"min_year {self.min_year} > max_year {self.max_year}")
        if self.window_halfwidth < 0:
            raise ValueError("window_halfwidth must be >= 0")
        if self.window_halfwidth > self.max_year - self.min_year:
            raise ValueError(
                f"window_halfwidth {self.window_halfwidth} exceeds the year range "
                f"{self.min_year}-{self.max_year}")
        if self.fuzzy_threshold < 0:
            raise ValueError("fuzzy_threshold must be >= 0")
        if self.top_k < 1:
            raise ValueError("top_k must be >= 1")


@dataclass(frozen=True, eq=False)
class Spectrum:
    min_year: int
    max_year: int
    counts: np.ndarray
    medians: np.ndarray | None = None
    deviations: np.ndarray | None = None
    deviation_mode: DeviationMode = DeviationMode.SIGNED

    @property
    def years(self) -> np.ndarray:
        return np.arange(self.min_year, self.max_year + 1)

    @property
    def total(self) -> int:
        return int(self.counts.sum())

    def __len__(self):
        return self.max_year - self.min_year + 1

    def index(self, year: int) -> int:
        if not self.min_year <= year <= self.max_year:
            raise KeyError(year)
        return year - self.min_year

    def count_at(self, year: int) -> int:
        return int(self.counts[self.index(year)])

    def deviation_at(self, year: int) -> float:
        return float(self.deviations[self.index(year)])

    @property
    def signed_deviations(self) -> np.ndarray:
        return self.counts - self.medians


def build_counts(clusters, cfg: AnalysisConfig) -> Spectrum:
    counts = np.zeros(cfg.max_year - cfg.min_year + 1, dtype=np.int64)
    hit = False
    for c in clusters:
        y = c.canonical_key.year
        if cfg.min_year <= y <= cfg.max_year:
            counts[y - cfg.min_year] += c.count
            hit = True
    if not hit:
        raise EmptyRange(f"no cited references in {cfg.min_year}-{cfg.max_year}")
    return Spectrum(cfg.min_year, cfg.max_year, counts)


def windowed_median(counts, i: int, halfwidth: int) -> float:
    """Median of ``counts[i - halfwidth : i + halfwidth + 1]``, truncated at the
    series ends. Even-sized windows average the two middle values.

    ``i`` is a position in the series, not a calendar year.
    """
    n = len(counts)
    if not 0 <= i < n:
        raise IndexError(i)
    window = sorted(int(v) for v in counts[max(0, i - halfwidth):min(n, i + halfwidth + 1)])
    mid = len(window) // 2
    if len(window) % 2:
        return float(window[mid])
    return (window[mid - 1] + window[mid]) / 2


def rolling_medians(counts, halfwidth: int) -> np.ndarray:
    return np.array([windowed_median(counts, i, halfwidth) for i in range(len(counts))],
                    dtype=np.float64)


def build_spectrum(clusters, cfg: AnalysisConfig) -> Spectrum:
    base = build_counts(clusters, cfg)
    medians = rolling_medians(base.counts, cfg.window_halfwidth)
    deviations = base.counts - medians
    if cfg.deviation_mode is DeviationMode.ABSOLUTE:
        deviations = np.abs(deviations)
    # normalise -0.0 so emitted text never shows "-0"
    deviations = deviations + 0.0
    return Spectrum(base.min_year, base.max_year, base.counts, medians, deviations,
                    cfg.deviation_mode)
