"""Otsu automatic thresholding, the regularization-free comparison point.

Pixels are binned into a 256-bin histogram over [0, 1]; the returned
threshold is the bin edge maximizing the between-class variance. Candidate
scores are compared in exact integer arithmetic (counts and bin indices are
integers, and squared sums overflow double precision on large images), so
ties resolve deterministically to the lowest threshold.
"""

from typing import NamedTuple

import numpy as np

from .errors import DegenerateImageError


class Histogram(NamedTuple):
    """256 counts over normalized intensity [0, 1] and the total."""

    bins: np.ndarray
    total: int


def histogram_256(f: np.ndarray) -> Histogram:
    """Bin intensities in [0, 1] into 256 equal bins (1.0 joins the last)."""
    f = np.asarray(f, dtype=np.float64)
    if f.size == 0:
        raise ValueError("cannot histogram an empty field")
    if not np.all(np.isfinite(f)) or f.min() < 0.0 or f.max() > 1.0:
        raise ValueError("intensities must be finite and within [0, 1]")
    idx = np.minimum((f * 256).astype(np.int64), 255)
    bins = np.bincount(idx.ravel(), minlength=256)
    return Histogram(bins=bins, total=int(f.size))


def otsu_threshold(f: np.ndarray) -> float:
    """Threshold k/256 whose split {f < t} / {f >= t} maximizes the
    between-class variance; lowest such edge on ties.

    Raises DegenerateImageError when every split leaves a class empty
    (all pixels fall into a single bin).
    """
    hist = histogram_256(f)
    counts = [int(c) for c in hist.bins]
    total = hist.total
    sum_total = sum(i * c for i, c in enumerate(counts))

    best_k = -1
    best_num = 0  # (s0*w1 - s1*w0)^2, exact
    best_den = 1  # w0*w1, exact
    w0 = 0
    s0 = 0
    for k in range(1, 256):
        w0 += counts[k - 1]
        s0 += (k - 1) * counts[k - 1]
        w1 = total - w0
        if w0 == 0 or w1 == 0:
            continue
        num = (s0 * w1 - (sum_total - s0) * w0) ** 2
        den = w0 * w1
        # num/den > best_num/best_den, cross-multiplied to stay in integers
        if best_k < 0 or num * best_den > best_num * den:
            best_k, best_num, best_den = k, num, den
    if best_k < 0:
        raise DegenerateImageError("all pixels in one bin; no separating threshold")
    return best_k / 256.0


def otsu_segment(f: np.ndarray) -> np.ndarray:
    """Binary mask f >= otsu_threshold(f); boundary pixels go foreground."""
    return (np.asarray(f, dtype=np.float64) >= otsu_threshold(f)).astype(np.uint8)
