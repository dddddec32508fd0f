"""Input checks shared by the estimator and the CLI."""

from __future__ import annotations

from collections.abc import Iterable

from .ingest import CitingRecord, Corpus


def check_corpus(X) -> Corpus:
    """Accept a Corpus or an iterable of CitingRecord and return a Corpus."""
    if isinstance(X, Corpus):
        return X
    if isinstance(X, (str, bytes)) or not isinstance(X, Iterable):
        raise TypeError(f"expected a Corpus or an iterable of CitingRecord, got {type(X).__name__}")
    records = tuple(X)
    bad = [type(r).__name__ for r in records if not isinstance(r, CitingRecord)]
    if bad:
        raise TypeError(f"expected CitingRecord items, got {bad[0]}")
    return Corpus(records)


def window_to_halfwidth(width: int) -> int:
    """Map a full window width (odd, or 0) to its halfwidth."""
    if width < 0:
        raise ValueError("window width must be >= 0")
    if width == 0:
        return 0
    if width % 2 == 0:
        raise ValueError(f"window width must be odd or 0, got {width}")
    return (width - 1) // 2
