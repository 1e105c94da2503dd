#!/usr/bin/env python3
# -*- coding: utf-8 -*-

"""
Extraction of atoms from a flat moment matrix.

M_t[y] = V V^T is factored with a symmetric eigendecomposition, V is
brought to column echelon form U = V V[w]^-1 over a set w of r monomials
picked greedily in graded order, and the multiplication matrices of the
coordinates are diagonalized jointly through the Schur form of a random
convex combination.
"""

import logging
from dataclasses import dataclass, field
from typing import List

import numpy as np
from scipy import linalg
from scipy.optimize import nnls

from exceptions import ExtractionError
from moment_relax import Tms

logger = logging.getLogger(__name__)

# Relative singular value for accepting a row into the echelon basis
_PIVOT_TOL = 1e-8


@dataclass
class ExtractionResult:
    """
    Attributes:
        points: The r atoms
        weights: Nonnegative least-squares weights of the atoms
        residual: Max deviation of the atomic moments from y up to degree 2t
    """

    points: List[np.ndarray] = field(default_factory=list)
    weights: np.ndarray = field(default_factory=lambda: np.zeros(0))
    residual: float = float("inf")


def _echelon_rows(V: np.ndarray, r: int) -> List[int]:
    selected: List[int] = []
    for k in range(V.shape[0]):
        candidate = V[selected + [k]]
        sigma = linalg.svdvals(candidate)
        if sigma[-1] > _PIVOT_TOL * max(sigma[0], 1.0):
            selected.append(k)
            if len(selected) == r:
                break
    return selected


def extract_minimizers(y: Tms, t: int, r: int, seed: int = 0) -> ExtractionResult:
    """
    Recover r points from a flat moment sequence.

    Args:
        y: Moment sequence of degree >= 2t
        t: Level at which flat truncation holds
        r: Rank of M_t[y]
        seed: Seed of the random convex combination

    Returns:
        ExtractionResult

    Raises:
        ExtractionError: If the rank does not match the factorization or the
            echelon basis leaves the degree range
    """
    index = y.index
    n = index.n
    M = y.moment_matrix(t)
    lam, vecs = linalg.eigh(M)
    order = np.argsort(lam)[::-1][:r]
    if r < 1 or np.any(lam[order] <= 0):
        raise ExtractionError(f"moment matrix has fewer than {r} positive eigenvalues")
    V = vecs[:, order] * np.sqrt(lam[order])

    rows = _echelon_rows(V, r)
    if len(rows) < r:
        raise ExtractionError(f"could only select {len(rows)} of {r} independent monomials")
    exps = [np.array(index.exponents[k], dtype=int) for k in range(index.prefix(t))]
    U = V @ np.linalg.inv(V[rows])

    mult = []
    for j in range(n):
        shift = np.zeros(n, dtype=int)
        shift[j] = 1
        N = np.empty((r, r))
        for a, k in enumerate(rows):
            target = tuple((exps[k] + shift).tolist())
            pos = index.position(target)
            if pos >= len(exps):
                raise ExtractionError("multiplication leaves the moment matrix basis")
            N[a] = U[pos]
        mult.append(N)

    rng = np.random.default_rng(seed)
    coeffs = rng.random(n)
    coeffs /= coeffs.sum()
    combined = sum(c * N for c, N in zip(coeffs, mult))
    _, Q = linalg.schur(combined, output="real")

    points = [np.array([Q[:, k] @ N @ Q[:, k] for N in mult]) for k in range(r)]
    if not all(np.all(np.isfinite(u)) for u in points):
        raise ExtractionError("non-finite atoms")

    size = index.prefix(2 * t)
    A = np.column_stack([index.monomial_vector(u, 2 * t) for u in points])
    weights, _ = nnls(A, y.values[:size])
    residual = float(np.max(np.abs(A @ weights - y.values[:size])))
    logger.debug(f"Extracted {r} atom(s) at t={t}, moment residual {residual:.2e}")
    return ExtractionResult(points=points, weights=weights, residual=residual)

