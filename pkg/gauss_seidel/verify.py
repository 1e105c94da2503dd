#!/usr/bin/env python3
# -*- coding: utf-8 -*-

"""
Verification of a candidate generalized Nash equilibrium.

For each player the best response value f_i* with x_{-i} fixed is computed
globally; the candidate is accepted when every gap f_i(x) - f_i* is at most
the accuracy threshold and the point is feasible.
"""

import logging
from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional

import numpy as np

from exceptions import SolverError
from gauss_seidel.subproblem import player_subproblem
from instance_model import FeasibilityReport, GneppInstance, feasibility_residual
from poly_core import PointLike
from pop_hierarchy import PopSolver, PopStatus

logger = logging.getLogger(__name__)

DEFAULT_GNE_TOL = 1e-6


@dataclass
class GneReport:
    """
    Attributes:
        gaps: eps_i = f_i(x) - f_i* per player
        values: f_i(x)
        optima: f_i* (lower bound of the restricted problem)
        statuses: Hierarchy status per player
        best_responses: A global minimizer of each restricted problem, if extracted
        feasibility: Constraint residuals at x
        threshold: Accuracy threshold
    """

    gaps: List[float] = field(default_factory=list)
    values: List[float] = field(default_factory=list)
    optima: List[float] = field(default_factory=list)
    statuses: List[str] = field(default_factory=list)
    best_responses: List[Optional[np.ndarray]] = field(default_factory=list)
    feasibility: Optional[FeasibilityReport] = None
    threshold: float = DEFAULT_GNE_TOL

    @property
    def eps(self) -> float:
        # nan gaps (infeasible restricted problems) count as unbounded
        if any(not np.isfinite(g) for g in self.gaps):
            return float("inf")
        return max(self.gaps, default=0.0)

    @property
    def feasible(self) -> bool:
        return self.feasibility is None or self.feasibility.feasible

    @property
    def is_gne(self) -> bool:
        return self.feasible and all(np.isfinite(g) and g <= self.threshold for g in self.gaps)

    def summary(self) -> str:
        verdict = "GNE" if self.is_gne else "not a GNE"
        gaps = ", ".join(f"{g:.3e}" for g in self.gaps)
        return f"{verdict}: eps = {self.eps:.3e} (gaps {gaps}), max violation {self._violation():.3e}"

    def _violation(self) -> float:
        return self.feasibility.max_violation if self.feasibility else 0.0


def verify_gne(
    inst: GneppInstance,
    x: PointLike,
    eps_threshold: float = DEFAULT_GNE_TOL,
    pop_options: Optional[Dict[str, Any]] = None,
    sdp_config: Optional[Dict[str, Any]] = None,
    ball_radius: Optional[float] = None,
) -> GneReport:
    """
    Check whether x is a GNE up to eps_threshold.

    Args:
        inst: Instance
        x: Candidate point
        eps_threshold: Accuracy threshold on every per-player gap
        pop_options: Options of the hierarchy
        sdp_config: Options of the interior-point solver
        ball_radius: R of the constraint R - ||x_i||^2 >= 0 the solve added
            to every player's problem, None for none

    Returns:
        GneReport

    Raises:
        SolverError: If a player's problem cannot be solved, annotated with the player
    """
    layout = inst.layout
    point = layout.vector(x)
    pop = PopSolver(pop_options, sdp_config)
    report = GneReport(threshold=eps_threshold)
    report.feasibility = feasibility_residual(inst, point, pop.feastol)
    if not report.feasibility.feasible:
        logger.warning(f"Candidate point is infeasible (max violation {report.feasibility.max_violation:.3e})")

    for i in range(1, inst.n_players + 1):
        value = inst.player(i).objective.eval(point)
        objective, constraints = player_subproblem(inst, i, point, ball_radius=ball_radius)
        report.values.append(value)
        if objective.is_constant():
            report.optima.append(value)
            report.gaps.append(0.0)
            report.statuses.append("ConstantObjective")
            report.best_responses.append(point[layout.block_slice(i)].copy())
            continue
        try:
            result = pop.solve(objective, constraints, layout.block_variables(i))
        except SolverError as e:
            raise SolverError(f"verification of player {i} failed: {e}") from e

        report.statuses.append(result.status.value)
        if result.status == PopStatus.INFEASIBLE:
            report.optima.append(float("nan"))
            report.gaps.append(float("nan"))
            report.best_responses.append(None)
            continue
        optimum = result.bound
        report.optima.append(optimum)
        report.gaps.append(value - optimum if np.isfinite(optimum) else float("inf"))
        report.best_responses.append(result.best_minimizer() if result.minimizers else None)
        logger.debug(f"Player {i}: f_i(x) = {value:.10g}, f_i* = {optimum:.10g}")
    return report
