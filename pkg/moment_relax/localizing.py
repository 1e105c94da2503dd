#!/usr/bin/env python3
# -*- coding: utf-8 -*-

"""
Localizing matrices as linear maps of a moment sequence.

For a polynomial q and order d, L_q^(d)[y] has side C(n + t, t) with
t = d - ceil(deg(q) / 2), and entry (a, b) = sum_gamma q_gamma y_{gamma + a + b}.
q = 1 gives the moment matrix M_d[y].
"""

import math
from dataclasses import dataclass
from typing import List, Optional, Sequence, Tuple

import numpy as np

from exceptions import DegreeError
from moment_relax.tms import MomentIndex, Tms
from poly_core import Polynomial, Variable


def half_degree(q: Polynomial) -> int:
    """ceil(deg(q) / 2)."""
    return int(math.ceil(q.degree / 2))


@dataclass(frozen=True)
class LocalizingForm:
    """
    Symmetric-matrix-valued linear map y -> L_q^(d)[y].

    The map is stored as upper-triangle triplets: entry (a, b), a <= b,
    receives value * y[moment] for every stored (moment, a, b, value).

    Attributes:
        q: Localizing polynomial
        order: Relaxation order d
        t: Basis degree of the matrix
        index: Moment index of degree 2d the map reads from
        moments, rows, cols, values: Parallel triplet arrays
    """

    q: Polynomial
    order: int
    t: int
    index: MomentIndex
    moments: np.ndarray
    rows: np.ndarray
    cols: np.ndarray
    values: np.ndarray

    @property
    def size(self) -> int:
        return self.index.prefix(self.t)

    def assemble(self, y) -> np.ndarray:
        """
        Evaluate the matrix at a moment sequence.

        Args:
            y: Tms or plain vector aligned with `index`

        Returns:
            Symmetric (size, size) array
        """
        values = y.values if isinstance(y, Tms) else np.asarray(y, dtype=float)
        out = np.zeros((self.size, self.size))
        np.add.at(out, (self.rows, self.cols), self.values * values[self.moments])
        upper = np.triu(out, 1)
        return np.triu(out) + upper.T

    def entry_terms(self, a: int, b: int) -> List[Tuple[int, float]]:
        """(moment position, coefficient) pairs of entry (a, b)."""
        a, b = min(a, b), max(a, b)
        mask = (self.rows == a) & (self.cols == b)
        return list(zip(self.moments[mask].tolist(), self.values[mask].tolist()))

    def coefficient_matrix(self, k: int) -> np.ndarray:
        """Q_alpha: symmetric matrix multiplying y at moment position k."""
        out = np.zeros((self.size, self.size))
        mask = self.moments == k
        np.add.at(out, (self.rows[mask], self.cols[mask]), self.values[mask])
        upper = np.triu(out, 1)
        return np.triu(out) + upper.T


def localizing(q: Polynomial, d: int, variables: Optional[Sequence[Variable]] = None) -> LocalizingForm:
    """
    Build the localizing form of q at order d.

    Args:
        q: Localizing polynomial
        d: Relaxation order
        variables: Variable list of the moment sequence, defaults to every
            variable of q's layout

    Returns:
        LocalizingForm reading a tms of degree 2d

    Raises:
        DegreeError: If ceil(deg(q) / 2) > d
    """
    t = d - half_degree(q)
    if t < 0:
        raise DegreeError(f"localizing polynomial of degree {q.degree} does not fit order {d}")
    variables = tuple(variables) if variables is not None else q.layout.variables
    index = MomentIndex(variables, 2 * d)
    exps = np.array(index.exponents[: index.prefix(t)], dtype=int).reshape(-1, index.n)
    size = exps.shape[0]
    q_terms = [(np.array(e, dtype=int), c) for e, c in q.exponent_dict(variables).items()]

    moments, rows, cols, values = [], [], [], []
    for a in range(size):
        for b in range(a, size):
            base = exps[a] + exps[b]
            for gamma, coef in q_terms:
                moments.append(index.position(tuple((base + gamma).tolist())))
                rows.append(a)
                cols.append(b)
                values.append(coef)
    return LocalizingForm(
        q=q, order=d, t=t, index=index,
        moments=np.array(moments, dtype=int), rows=np.array(rows, dtype=int),
        cols=np.array(cols, dtype=int), values=np.array(values, dtype=float),
    )
