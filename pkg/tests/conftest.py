from fractions import Fraction

import numpy as np
import pytest


@pytest.fixture
def rng():
    return np.random.default_rng(1234)


def boundary_transitions(mask):
    """Count of 4-neighbor label changes, a discrete boundary length."""
    mask = np.asarray(mask)
    return int(np.sum(mask[1:, :] != mask[:-1, :])
               + np.sum(mask[:, 1:] != mask[:, :-1]))


def otsu_scan_reference(bins):
    """Independent exhaustive scan: for every candidate edge k/256 compute
    the between-class variance in exact rational arithmetic; lowest edge
    wins ties."""
    total = int(sum(bins))
    best_k, best_score = -1, Fraction(0)
    for k in range(256):
        w0 = int(sum(bins[:k]))
        w1 = total - w0
        if w0 == 0 or w1 == 0:
            continue
        mu0 = Fraction(sum(i * int(c) for i, c in enumerate(bins[:k])), w0)
        mu1 = Fraction(sum(i * int(c) for i, c in enumerate(bins[k:], k)), w1)
        score = Fraction(w0) * Fraction(w1) * (mu0 - mu1) ** 2
        if best_k < 0 or score > best_score:
            best_k, best_score = k, score
    return best_k / 256.0
