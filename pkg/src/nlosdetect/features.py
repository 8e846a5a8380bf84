"""Per-window statistical features.

Eleven statistics per window, in this fixed order: max, min, mean,
population standard deviation, skewness, kurtosis, energy, max/min,
max-min, std/mean and (max-min)^2.  Moments are population (divide by n)
throughout, which makes energy == n * (mean^2 + variance) an exact
identity; kurtosis is the plain fourth standardized moment (not excess).

Ratio features with an exactly-zero denominator return 0.0 and set a
degeneracy flag instead of emitting infinities that would poison the
standardizer.  Skewness and kurtosis of a constant window are defined
as 0 for the same reason.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .dataset import LabeledDataset
from .errors import EmptyMatrixError

FEATURE_NAMES = (
    "max",
    "min",
    "mean",
    "std_deviation",
    "skewness",
    "kurtosis",
    "energy",
    "max_over_min",
    "max_minus_min",
    "sd_over_mean",
    "max_minus_min_squared",
)

N_FEATURES = len(FEATURE_NAMES)


@dataclass(frozen=True)
class FeatureVector:
    values: np.ndarray
    degenerate_flags: frozenset[str]


def window_stats(window: np.ndarray) -> FeatureVector:
    """Compute the 11 statistics for one finite 1-D window."""
    x = np.asarray(window, dtype=np.float64)
    if x.ndim != 1 or x.size < 2:
        raise ValueError("window must be 1-D with at least 2 samples")
    if not np.isfinite(x).all():
        raise ValueError("window contains non-finite samples")

    mx = float(np.max(x))
    mn = float(np.min(x))
    mean = float(np.mean(x))
    centered = x - mean
    m2 = float(np.mean(centered**2))
    std = float(np.sqrt(m2))
    energy = float(np.sum(x**2))

    flags = set()
    if std == 0.0:
        flags.add("zero_std")
        skew = 0.0
        kurt = 0.0
    else:
        skew = float(np.mean(centered**3)) / m2**1.5
        kurt = float(np.mean(centered**4)) / m2**2

    if mn == 0.0:
        flags.add("zero_min")
        max_over_min = 0.0
    else:
        max_over_min = mx / mn

    if mean == 0.0:
        flags.add("zero_mean")
        sd_over_mean = 0.0
    else:
        sd_over_mean = std / mean

    span = mx - mn
    values = np.array(
        [mx, mn, mean, std, skew, kurt, energy, max_over_min, span, sd_over_mean, span * span]
    )
    return FeatureVector(values=values, degenerate_flags=frozenset(flags))


def stats_matrix(ds: LabeledDataset) -> np.ndarray:
    """Row i of the result is window_stats(ds.windows[i]).values."""
    if ds.n_windows == 0:
        raise EmptyMatrixError("dataset has no windows")
    return np.vstack([window_stats(w).values for w in ds.windows])
