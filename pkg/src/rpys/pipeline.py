"""End-to-end analysis: corpus -> references -> works -> spectrum -> peaks."""

from __future__ import annotations

from dataclasses import dataclass

from .cluster import cluster_exact, cluster_fuzzy
from .exceptions import EmptyCorpus
from .peaks import Peak, attribute_peak, detect_peaks
from .refparse import ParseResult, parse_all
from .spectrum import AnalysisConfig, Spectrum, build_spectrum


@dataclass(frozen=True)
class CorpusStats:
    n_records: int
    n_references: int
    tallies: dict

    @property
    def parsed(self) -> int:
        return self.tallies["Parsed"]


@dataclass(frozen=True)
class RunReport:
    config: AnalysisConfig
    corpus: CorpusStats
    total: int
    min_year: int
    max_year: int
    peaks: tuple[Peak, ...]


@dataclass(frozen=True, eq=False)
class Analysis:
    """Everything one run produces; ``report`` is the summary that gets emitted."""

    report: RunReport
    parsed: ParseResult
    clusters: tuple
    spectrum: Spectrum


def analyze(corpus, cfg: AnalysisConfig | None = None, n_jobs: int = 1,
            max_ref_year: int | None = None) -> Analysis:
    cfg = cfg or AnalysisConfig()
    if len(corpus.records) == 0:
        raise EmptyCorpus("corpus contains no records")

    parsed = parse_all(corpus, max_ref_year, n_jobs=n_jobs)
    clusters = cluster_exact(parsed, count_multiplicity=cfg.count_multiplicity)
    if cfg.fuzzy_threshold:
        clusters = cluster_fuzzy(clusters, cfg.fuzzy_threshold)
    spectrum = build_spectrum(clusters, cfg)
    peaks = tuple(attribute_peak(p, clusters, cfg.top_k) for p in detect_peaks(spectrum, cfg))

    stats = CorpusStats(len(corpus.records), len(parsed), dict(parsed.tallies))
    report = RunReport(cfg, stats, spectrum.total, spectrum.min_year, spectrum.max_year, peaks)
    return Analysis(report, parsed, tuple(clusters), spectrum)
