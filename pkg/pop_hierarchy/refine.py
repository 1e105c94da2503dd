#!/usr/bin/env python3
# -*- coding: utf-8 -*-

"""
Local polishing of extracted minimizers.

Atoms read off an SDP solution carry the solver's error. A short SLSQP run
from each atom, with exact polynomial gradients, moves it onto the
constraint set and the nearby local minimum.
"""

import logging
from dataclasses import dataclass
from typing import Any, Dict, List, Sequence, Tuple

import numpy as np
from scipy.optimize import minimize

from instance_model import Constraint
from poly_core import Polynomial, Variable

logger = logging.getLogger(__name__)

DEFAULT_POLISH_MAXITER = 200
_POLISH_FTOL = 1e-15


class CompiledPolynomial:
    """
    A polynomial as dense exponent and coefficient arrays over a fixed
    variable order, for fast value and gradient evaluation.

    Args:
        poly: The polynomial
        variables: Variable order of the evaluation points
    """

    def __init__(self, poly: Polynomial, variables: Sequence[Variable]):
        items = list(poly.exponent_dict(variables).items())
        n = len(variables)
        self.exps = np.array([e for e, _ in items], dtype=int).reshape(-1, n)
        self.coefs = np.array([c for _, c in items], dtype=float)

    def value(self, u: np.ndarray) -> float:
        return float(self.coefs @ np.prod(np.asarray(u, dtype=float) ** self.exps, axis=1))

    def gradient(self, u: np.ndarray) -> np.ndarray:
        u = np.asarray(u, dtype=float)
        out = np.zeros(self.exps.shape[1])
        for j in range(self.exps.shape[1]):
            mask = self.exps[:, j] > 0
            if not np.any(mask):
                continue
            lowered = self.exps[mask].copy()
            lowered[:, j] -= 1
            out[j] = float((self.coefs[mask] * self.exps[mask, j]) @ np.prod(u ** lowered, axis=1))
        return out


@dataclass
class PolishedPoint:
    """
    Attributes:
        point: The SLSQP end point, or the start when SLSQP diverged
        violation: Largest constraint violation at `point`
        value: Objective value at `point`
        moved: Distance from the start
    """

    point: np.ndarray
    violation: float
    value: float
    moved: float


class MinimizerPolisher:
    """
    SLSQP refinement of candidate minimizers of  min f  s.t.  g >= 0, h == 0.

    Args:
        objective: f
        constraints: The problem constraints
        variables: Variable order of the candidate points
        maxiter: SLSQP iteration limit
    """

    def __init__(self, objective: Polynomial, constraints: Sequence[Constraint], variables: Sequence[Variable],
                 maxiter: int = DEFAULT_POLISH_MAXITER):
        self.objective = CompiledPolynomial(objective, variables)
        self.constraints: List[Tuple[Constraint, CompiledPolynomial]] = [
            (c, CompiledPolynomial(c.poly, variables)) for c in constraints
        ]
        self.maxiter = int(maxiter)

    def violation(self, u: np.ndarray) -> float:
        return max((c.violation(g.value(u)) for c, g in self.constraints), default=0.0)

    def polish(self, u0: Sequence[float]) -> PolishedPoint:
        """
        Refine one candidate.
        """
        start = np.asarray(u0, dtype=float)
        scipy_constraints: List[Dict[str, Any]] = [
            {"type": "eq" if c.is_equality else "ineq", "fun": g.value, "jac": g.gradient}
            for c, g in self.constraints
        ]
        result = minimize(
            self.objective.value, start, jac=self.objective.gradient, method="SLSQP",
            constraints=scipy_constraints, options={"maxiter": self.maxiter, "ftol": _POLISH_FTOL, "disp": False},
        )
        candidate = np.asarray(result.x, dtype=float)
        if not np.all(np.isfinite(candidate)):
            candidate = start
        polished = PolishedPoint(candidate, self.violation(candidate), self.objective.value(candidate),
                                 float(np.linalg.norm(candidate - start)))
        logger.debug(f"SLSQP: {result.message}; moved {polished.moved:.2e}, violation {polished.violation:.2e}")
        return polished


def polish_minimizers(
    objective: Polynomial,
    constraints: Sequence[Constraint],
    variables: Sequence[Variable],
    points: Sequence[np.ndarray],
    maxiter: int = DEFAULT_POLISH_MAXITER,
) -> List[PolishedPoint]:
    """
    Polish every candidate with one MinimizerPolisher.
    """
    polisher = MinimizerPolisher(objective, constraints, variables, maxiter)
    return [polisher.polish(u) for u in points]
