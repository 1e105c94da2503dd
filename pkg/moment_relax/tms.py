#!/usr/bin/env python3
# -*- coding: utf-8 -*-

"""
Truncated multi-sequences indexed by the graded monomial basis.

Because the basis is graded, the entries of degree <= k always form a
prefix of the sequence; truncation is slicing.
"""

from functools import lru_cache
from typing import Dict, Optional, Sequence, Tuple

import numpy as np
from scipy.special import comb

from exceptions import DegreeError, InputError
from poly_core import Monomial, Polynomial, Variable, exponent_basis


@lru_cache(maxsize=256)
def _exponents(n: int, degree: int) -> Tuple[Tuple[int, ...], ...]:
    return tuple(exponent_basis(n, degree))


def basis_size(n: int, degree: int) -> int:
    """C(n + degree, degree): length of [v]_degree in n variables."""
    return int(comb(n + degree, degree, exact=True))


class MomentIndex:
    """
    Position of each monomial of degree <= `degree` over `variables`.

    Args:
        variables: Ordered variable list
        degree: Maximal monomial degree
    """

    def __init__(self, variables: Sequence[Variable], degree: int):
        if degree < 0:
            raise DegreeError(f"moment degree must be >= 0, got {degree}")
        self.variables: Tuple[Variable, ...] = tuple(variables)
        self.degree = int(degree)
        self.exponents = _exponents(len(self.variables), self.degree)
        self._position: Dict[Tuple[int, ...], int] = {e: k for k, e in enumerate(self.exponents)}

    @property
    def n(self) -> int:
        return len(self.variables)

    def __len__(self) -> int:
        return len(self.exponents)

    def prefix(self, degree: int) -> int:
        """Number of monomials of degree <= `degree`."""
        return basis_size(self.n, min(degree, self.degree))

    def position(self, exponents: Tuple[int, ...]) -> int:
        try:
            return self._position[exponents]
        except KeyError:
            raise DegreeError(f"monomial {exponents} exceeds moment degree {self.degree}") from None

    def monomial(self, k: int) -> Monomial:
        return Monomial.from_exponents(self.exponents[k], self.variables)

    def coefficients(self, f: Polynomial) -> np.ndarray:
        """
        Coefficient vector of f aligned with this index.

        Raises:
            DegreeError: If deg(f) exceeds the index degree
            InputError: If f uses a variable outside the index
        """
        if f.degree > self.degree:
            raise DegreeError(f"polynomial of degree {f.degree} exceeds moment degree {self.degree}")
        vec = np.zeros(len(self))
        for exps, coef in f.exponent_dict(self.variables).items():
            vec[self._position[exps]] += coef
        return vec

    def monomial_vector(self, u: Sequence[float], degree: Optional[int] = None) -> np.ndarray:
        """
        [u]_degree: every monomial of the index evaluated at u.
        """
        u = np.asarray(u, dtype=float).reshape(-1)
        if u.shape[0] != self.n:
            raise InputError(f"point has dimension {u.shape[0]}, expected {self.n}")
        size = len(self) if degree is None else self.prefix(degree)
        exps = np.array(self.exponents[:size], dtype=int).reshape(size, self.n)
        return np.prod(np.power(u[None, :], exps), axis=1)


class Tms:
    """
    Truncated multi-sequence y = (y_alpha) of even degree 2d.

    Args:
        index: Moment index of degree 2d
        values: Entries in index order
    """

    def __init__(self, index: MomentIndex, values: Sequence[float]):
        values = np.asarray(values, dtype=float).reshape(-1)
        if values.shape[0] != len(index):
            raise InputError(f"tms has {values.shape[0]} values, index expects {len(index)}")
        self.index = index
        self.values = values

    @classmethod
    def point_mass(cls, u: Sequence[float], variables: Sequence[Variable], degree: int) -> "Tms":
        """The moment sequence [u]_degree of the Dirac measure at u."""
        index = MomentIndex(variables, degree)
        return cls(index, index.monomial_vector(u))

    @classmethod
    def mixture(cls, points: Sequence[Sequence[float]], weights: Sequence[float],
                variables: Sequence[Variable], degree: int) -> "Tms":
        """Moments of a finitely atomic measure sum_k w_k delta_{u_k}."""
        index = MomentIndex(variables, degree)
        values = sum(float(w) * index.monomial_vector(u) for u, w in zip(points, weights))
        return cls(index, values)

    @property
    def degree(self) -> int:
        return self.index.degree

    @property
    def variables(self) -> Tuple[Variable, ...]:
        return self.index.variables

    def __len__(self) -> int:
        return len(self.values)

    def __getitem__(self, exponents: Tuple[int, ...]) -> float:
        return float(self.values[self.index.position(tuple(exponents))])

    def pair(self, f: Polynomial) -> float:
        """<f, y> = sum_alpha f_alpha y_alpha."""
        return float(self.index.coefficients(f) @ self.values)

    def truncate(self, degree: int) -> "Tms":
        if degree > self.degree:
            raise DegreeError(f"cannot truncate a degree {self.degree} tms to degree {degree}")
        index = MomentIndex(self.variables, degree)
        return Tms(index, self.values[: len(index)])

    def moment_matrix(self, t: int) -> np.ndarray:
        """
        M_t[y], the Hankel-type matrix with entry (a, b) = y_{a+b}.
        """
        if 2 * t > self.degree:
            raise DegreeError(f"moment matrix of order {t} needs a tms of degree {2 * t}, have {self.degree}")
        exps = np.array(self.index.exponents[: self.index.prefix(t)], dtype=int).reshape(-1, self.index.n)
        size = exps.shape[0]
        out = np.empty((size, size))
        for a in range(size):
            for b in range(a, size):
                out[a, b] = out[b, a] = self.values[self.index.position(tuple((exps[a] + exps[b]).tolist()))]
        return out

    def first_moments(self) -> np.ndarray:
        """(y_{e_1}, ..., y_{e_n}) divided by y_0."""
        return self.values[1 : self.index.n + 1] / self.values[0]

    def __repr__(self) -> str:
        return f"Tms(degree={self.degree}, n={self.index.n})"


def pair(f: Polynomial, y: Tms) -> float:
    """
    Linear pairing <f, y>.

    Raises:
        DegreeError: If deg(f) > degree of y
    """
    return y.pair(f)
