import random

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from oracles import is_peak_oracle
from rpys.cluster import WorkCluster, WorkKey
from rpys.exceptions import NoClustersAtYear
from rpys.fixture import build_corpus, default_spec
from rpys.ingest import Corpus
from rpys.peaks import Peak, attribute_peak, detect_peaks
from rpys.pipeline import analyze
from rpys.spectrum import AnalysisConfig, Spectrum


def spectrum_from(counts, deviations, start=1900):
    counts = np.asarray(counts, dtype=np.int64)
    medians = counts - np.asarray(deviations, dtype=float)
    return Spectrum(start, start + len(counts) - 1, counts, medians, counts - medians)


def cl(year, count, source="J"):
    key = WorkKey("X A", year, source)
    return WorkCluster(key, frozenset([key]), frozenset(range(count)), count)


def test_fixture_peaks(fixture_analysis):
    assert [p.year for p in fixture_analysis.report.peaks] == [1859, 1871, 1937, 1947]


def test_constant_series_has_no_peaks():
    assert detect_peaks(spectrum_from([20] * 10, [0] * 10), AnalysisConfig()) == []


def test_plateau_reports_earliest_year():
    s = spectrum_from([12, 30, 30, 12], [0, 15, 15, 0])
    assert [p.year for p in detect_peaks(s, AnalysisConfig())] == [1901]


def test_rising_shoulder_is_not_a_peak():
    s = spectrum_from([12, 30, 30, 40, 12], [0, 5, 5, 9, 0])
    assert [p.year for p in detect_peaks(s, AnalysisConfig())] == [1903]


def test_threshold_and_edges():
    s = spectrum_from([9, 0, 0, 0, 50], [5, 0, 0, 0, 3])
    assert [p.year for p in detect_peaks(s, AnalysisConfig())] == [1904]
    assert [p.year for p in detect_peaks(s, AnalysisConfig(min_peak_count=5))] == [1900, 1904]


def test_absolute_mode_still_detects_on_signed():
    counts = np.array([20, 20, 5, 20, 20])
    medians = np.array([20.0, 20, 20, 20, 20])
    s = Spectrum(1900, 1904, counts, medians, np.abs(counts - medians), "absolute")
    assert detect_peaks(s, AnalysisConfig(min_peak_count=1)) == []


@pytest.mark.parametrize("year, top, total", [(1947, 144, 161), (1859, 53, 54), (1937, 22, 41)])
def test_attribution_shares(fixture_analysis, year, top, total):
    peak = next(p for p in fixture_analysis.report.peaks if p.year == year)
    assert (peak.top_count, peak.count) == (top, total)
    assert peak.top_share == pytest.approx(top / total, abs=1e-12)
    assert len(peak.top_clusters) <= 5


def test_attribute_ranks_and_breaks_ties():
    clusters = [cl(1900, 3, "B"), cl(1900, 5, "Z"), cl(1900, 3, "A"), cl(1901, 9)]
    peak = attribute_peak(Peak(1900, 11, 4.0), clusters, k=2)
    assert [(c.canonical_key.source_norm, n) for c, n in peak.top_clusters] == [("Z", 5), ("A", 3)]
    assert peak.top_share == 5 / 11


def test_attribute_without_clusters():
    with pytest.raises(NoClustersAtYear):
        attribute_peak(Peak(1950, 10, 1.0), [cl(1900, 3)], 5)


_series = st.lists(st.tuples(st.integers(0, 40), st.integers(-6, 6)), min_size=1, max_size=50)


@settings(max_examples=300, deadline=None)
@given(_series, st.integers(0, 30))
def test_matches_per_year_predicate(rows, min_count):
    counts = [c for c, _ in rows]
    dev = [d for _, d in rows]
    s = spectrum_from(counts, dev)
    found = [p.year - 1900 for p in detect_peaks(s, AnalysisConfig(min_peak_count=min_count))]
    assert found == [i for i in range(len(rows)) if is_peak_oracle(counts, dev, i, min_count)]
    higher = [p.year - 1900 for p in detect_peaks(s, AnalysisConfig(min_peak_count=min_count + 5))]
    assert set(higher) <= set(found)


def test_peaks_invariant_under_record_permutation():
    corpus = build_corpus(default_spec(seed=11))
    records = list(corpus.records)
    random.Random(5).shuffle(records)
    a = analyze(corpus).report.peaks
    b = analyze(Corpus(tuple(records))).report.peaks
    assert a == b


def test_attribution_conserves_counts(fixture_analysis):
    spectrum = fixture_analysis.spectrum
    for p in fixture_analysis.report.peaks:
        assert p.count >= 10 and p.deviation > 0
        assert sum(n for _, n in p.top_clusters) <= p.count
        at_year = sum(c.count for c in fixture_analysis.clusters if c.year == p.year)
        assert at_year == spectrum.count_at(p.year) == p.count
