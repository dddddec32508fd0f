"""Independent reference implementations used to check the library."""

import statistics
from functools import lru_cache


def median_oracle(counts, i, halfwidth):
    window = []
    for j in range(i - halfwidth, i + halfwidth + 1):
        if 0 <= j < len(counts):
            window.append(counts[j])
    return statistics.median(window)


def edit_distance_oracle(a, b):
    @lru_cache(maxsize=None)
    def d(i, j):
        if i == 0:
            return j
        if j == 0:
            return i
        return min(d(i - 1, j) + 1, d(i, j - 1) + 1, d(i - 1, j - 1) + (a[i - 1] != b[j - 1]))

    return d(len(a), len(b))


def is_peak_oracle(counts, dev, i, min_count):
    """Peak predicate evaluated at a single position."""
    if counts[i] < min_count or not dev[i] > 0:
        return False
    if i > 0 and not dev[i - 1] < dev[i]:
        return False
    j = i + 1
    while j < len(dev) and dev[j] == dev[i]:
        j += 1
    return j == len(dev) or dev[j] < dev[i]
