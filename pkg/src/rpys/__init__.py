"""Reference Publication Year Spectroscopy (RPYS).

Find the historical roots of a literature by counting its cited references per
publication year, comparing each year with the median of its neighbours, and
naming the works behind the peaks.
"""

from .cluster import WorkCluster, WorkKey, cluster_exact, cluster_fuzzy
from .estimator import RPYS
from .exceptions import (
    DuplicateId,
    EmptyCorpus,
    EmptyRange,
    InvalidYear,
    MalformedRecord,
    NoClustersAtYear,
    RPYSError,
    SpecOverflow,
)
from .ingest import CitingRecord, Corpus, parse_field_tagged, parse_jsonl
from .peaks import Peak, attribute_peak, detect_peaks
from .pipeline import analyze
from .refparse import CitedReference, Status, normalize, parse_all, parse_reference
from .spectrum import AnalysisConfig, DeviationMode, Spectrum, build_counts, build_spectrum, windowed_median

__version__ = "0.1.0"
