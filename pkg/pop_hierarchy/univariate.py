#!/usr/bin/env python3
# -*- coding: utf-8 -*-

"""
Exact minimization of a polynomial of one variable.

The real roots of the constraint polynomials split the line into gaps on
which no constraint changes sign, so the feasible set is a union of
feasible roots and feasible gaps. The minimum is taken over the feasible
roots and the critical points of f inside the feasible gaps. Feasible
sets without interior, where the moment relaxation has no strictly
feasible point, are handled like any other.
"""

import enum
import logging
from dataclasses import dataclass, field
from typing import List, Sequence, Tuple

import numpy as np
from numpy.polynomial import Polynomial as Univariate

from instance_model import Constraint
from poly_core import Polynomial, Variable

logger = logging.getLogger(__name__)

# Relative imaginary part below which a root is taken as real
_IMAG_TOL = 1e-7


class UnivariateStatus(str, enum.Enum):
    INFEASIBLE = "Infeasible"
    UNBOUNDED = "Unbounded"
    SOLVED = "Solved"


@dataclass
class UnivariateResult:
    """
    Attributes:
        status: Outcome
        value: Global minimum, -inf when unbounded
        points: Global minimizers within opt_tol of `value`
        violations: Largest constraint violation at each point
    """

    status: UnivariateStatus
    value: float = float("-inf")
    points: List[float] = field(default_factory=list)
    violations: List[float] = field(default_factory=list)


def to_univariate(poly: Polynomial, variable: Variable) -> Univariate:
    """
    `poly` as a numpy polynomial in `variable`.

    Raises:
        InputError: If `poly` uses another variable
    """
    terms = poly.exponent_dict([variable])
    degree = max((e[0] for e in terms), default=0)
    coefs = np.zeros(degree + 1)
    for (k,), c in terms.items():
        coefs[k] += c
    return Univariate(coefs)


def real_roots(p: Univariate) -> np.ndarray:
    if p.degree() < 1 or not np.any(p.coef[1:]):
        return np.zeros(0)
    roots = p.roots()
    keep = np.abs(roots.imag) <= _IMAG_TOL * np.maximum(1.0, np.abs(roots))
    return np.unique(roots[keep].real)


def _tends_to_minus_infinity(f: Univariate, direction: int) -> bool:
    coefs = np.trim_zeros(f.coef, "b")
    if len(coefs) < 2:
        return False
    degree = len(coefs) - 1
    return coefs[-1] * direction ** degree < 0


def _gap_point(left: float, right: float) -> float:
    if np.isfinite(left) and np.isfinite(right):
        return 0.5 * (left + right)
    if np.isfinite(left):
        return left + max(1.0, abs(left))
    if np.isfinite(right):
        return right - max(1.0, abs(right))
    return 0.0


def minimize_univariate(
    objective: Polynomial,
    constraints: Sequence[Constraint],
    variable: Variable,
    feastol: float = 1e-8,
    opt_tol: float = 1e-6,
) -> UnivariateResult:
    """
    Globally minimize  f(x)  s.t.  g(x) >= 0, h(x) == 0  over one variable.

    Args:
        objective: f
        constraints: Constraints in `variable` only
        variable: The variable
        feastol: Violation allowed at a root
        opt_tol: Values within opt_tol of the minimum count as minimizers

    Returns:
        UnivariateResult
    """
    f = to_univariate(objective, variable)
    forms: List[Tuple[Constraint, Univariate]] = [(c, to_univariate(c.poly, variable)) for c in constraints]

    def violation(u: float) -> float:
        return max((c.violation(float(g(u))) for c, g in forms), default=0.0)

    breaks = np.unique(np.concatenate([real_roots(g) for _, g in forms] + [np.zeros(0)]))
    has_equality = any(c.is_equality and np.any(g.coef[1:]) for c, g in forms)

    candidates: List[float] = [float(u) for u in breaks if violation(float(u)) <= feastol]
    edges = np.concatenate([[-np.inf], breaks, [np.inf]])
    critical = real_roots(f.deriv()) if f.degree() >= 1 else np.zeros(0)
    feasible_gap = False
    for left, right in zip(edges[:-1], edges[1:]):
        if has_equality or violation(_gap_point(left, right)) > 0.0:
            continue
        feasible_gap = True
        if (not np.isfinite(left) and _tends_to_minus_infinity(f, -1)) or (
                not np.isfinite(right) and _tends_to_minus_infinity(f, 1)):
            logger.debug(f"Objective is unbounded below on ({left}, {right})")
            return UnivariateResult(UnivariateStatus.UNBOUNDED)
        inside = [float(u) for u in critical if left < u < right]
        candidates.extend(inside)
        if not inside and not np.isfinite(left) and not np.isfinite(right):
            candidates.append(0.0)

    if not candidates:
        if feasible_gap:
            # f is monotone on an open gap whose ends are not attained
            return UnivariateResult(UnivariateStatus.UNBOUNDED)
        return UnivariateResult(UnivariateStatus.INFEASIBLE)

    values = np.array([float(f(u)) for u in candidates])
    best = float(values.min())
    points = sorted({round(u, 12) for u, v in zip(candidates, values) if v <= best + opt_tol})
    points = [float(u) for u in points]
    logger.debug(f"One-dimensional minimum {best:.10g} at {points}")
    return UnivariateResult(UnivariateStatus.SOLVED, best, points, [violation(u) for u in points])
