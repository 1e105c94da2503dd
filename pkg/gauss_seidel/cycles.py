#!/usr/bin/env python3
# -*- coding: utf-8 -*-

"""
Termination tests on iterate sequences: the trailing-window convergence
criterion and periodic cycle detection.
"""

from typing import Optional, Sequence

import numpy as np


def window_spread(iterates: Sequence[np.ndarray], window: int = 11) -> float:
    """
    Largest pairwise infinity-norm difference over the last `window`
    iterates (fewer when the sequence is shorter).
    """
    if len(iterates) < 2:
        return float("inf")
    tail = np.array(iterates[-window:])
    diffs = np.abs(tail[:, None, :] - tail[None, :, :])
    return float(diffs.max())


def has_converged(iterates: Sequence[np.ndarray], window: int = 11, tol: float = 1e-8) -> bool:
    return len(iterates) >= window and window_spread(iterates, window) <= tol


def detect_cycle(iterates: Sequence[np.ndarray], tol: float = 1e-6, max_period: int = 12) -> Optional[int]:
    """
    Smallest period p <= max_period such that the last 3p points repeat
    with period p.

    Args:
        iterates: Point sequence, at least 4 entries
        tol: Infinity-norm tolerance
        max_period: Longest period tried

    Returns:
        The period, 1 for a constant tail, None when there is none
    """
    n = len(iterates)
    if n < 4:
        return None
    points = np.array(iterates)
    for p in range(1, max_period + 1):
        if 3 * p > n:
            break
        tail = points[n - 3 * p:]
        if np.max(np.abs(tail[p:] - tail[:-p])) <= tol:
            return p
    return None
