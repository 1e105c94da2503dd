#!/usr/bin/env python3
# -*- coding: utf-8 -*-

"""
Flat truncation test: rank M_t[y] == rank M_{t - d_1}[y].
"""

from dataclasses import dataclass

import numpy as np
from scipy import linalg

from exceptions import DegreeError
from moment_relax import Tms

DEFAULT_RANK_TOL = 1e-6


@dataclass(frozen=True)
class FlatTruncation:
    holds: bool
    rank: int
    lower_rank: int
    t: int


def numerical_rank(M: np.ndarray, rank_tol: float = DEFAULT_RANK_TOL) -> int:
    """
    Count of singular values above rank_tol * max(sigma_max, 1).
    """
    if M.size == 0:
        return 0
    sigma = linalg.svdvals(M)
    return int(np.sum(sigma > rank_tol * max(float(sigma[0]), 1.0)))


def flat_truncation(y: Tms, d1: int, t: int, rank_tol: float = DEFAULT_RANK_TOL) -> FlatTruncation:
    """
    Check the flat truncation condition at level t.

    Args:
        y: Moment sequence of degree >= 2t
        d1: Constraint half degree
        t: Level, d1 <= t

    Returns:
        FlatTruncation with r = rank M_t[y]
    """
    if t < d1:
        raise DegreeError(f"flat truncation level {t} is below d1={d1}")
    rank = numerical_rank(y.moment_matrix(t), rank_tol)
    lower = numerical_rank(y.moment_matrix(t - d1), rank_tol)
    return FlatTruncation(holds=rank == lower and rank > 0, rank=rank, lower_rank=lower, t=t)
