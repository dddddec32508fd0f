"""scikit-learn style front end to the RPYS pipeline."""

from __future__ import annotations

import numpy as np
from sklearn.base import BaseEstimator
from sklearn.utils.validation import check_is_fitted

from .pipeline import analyze
from .spectrum import AnalysisConfig
from .validation import check_corpus


class RPYS(BaseEstimator):
    """Reference Publication Year Spectroscopy.

    Parameters mirror :class:`~rpys.spectrum.AnalysisConfig`; ``n_jobs``
    controls reference parsing only and never changes results.

    Attributes
    ----------
    spectrum_ : Spectrum
        Counts, windowed medians and deviations over ``[min_year, max_year]``.
    clusters_ : tuple of WorkCluster
    peaks_ : tuple of Peak
        Detected peaks with their top works attached.
    report_ : RunReport

    Examples
    --------
    >>> from rpys.fixture import build_corpus, default_spec
    >>> est = RPYS().fit(build_corpus(default_spec()))
    >>> [p.year for p in est.peaks_]
    [1859, 1871, 1937, 1947]
    """

    def __init__(self, min_year=1800, max_year=1960, window_halfwidth=2, min_peak_count=10,
                 deviation_mode="signed", count_multiplicity=False, fuzzy_threshold=0,
                 top_k=5, n_jobs=1):
        self.min_year = min_year
        self.max_year = max_year
        self.window_halfwidth = window_halfwidth
        self.min_peak_count = min_peak_count
        self.deviation_mode = deviation_mode
        self.count_multiplicity = count_multiplicity
        self.fuzzy_threshold = fuzzy_threshold
        self.top_k = top_k
        self.n_jobs = n_jobs

    def _config(self) -> AnalysisConfig:
        params = self.get_params()
        params.pop("n_jobs")
        return AnalysisConfig(**params)

    def fit(self, X, y=None):
        corpus = check_corpus(X)
        result = analyze(corpus, self._config(), n_jobs=self.n_jobs)
        self.config_ = result.report.config
        self.parsed_ = result.parsed
        self.clusters_ = result.clusters
        self.spectrum_ = result.spectrum
        self.peaks_ = result.report.peaks
        self.report_ = result.report
        return self

    def transform(self, X=None):
        """Return the fitted spectrum as an ``(n_years, 4)`` array of
        year, count, median, deviation."""
        check_is_fitted(self, "spectrum_")
        s = self.spectrum_
        return np.column_stack([s.years, s.counts, s.medians, s.deviations]).astype(float)

    def fit_transform(self, X, y=None):
        return self.fit(X).transform()

    @property
    def peak_years_(self):
        check_is_fitted(self, "peaks_")
        return [p.year for p in self.peaks_]
