#!/usr/bin/env python3
# -*- coding: utf-8 -*-

"""
Proximal Gauss-Seidel loop for GNEPPs.

Sweep k updates the players in order; player i minimizes its objective
plus tau_k ||x_i - x_i^(k)||^2 over its own block with the blocks
1..i-1 already replaced by their new values. Every subproblem is solved
globally by the moment hierarchy.
"""

import enum
import time
from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional, Tuple

import numpy as np

from exceptions import SolverError, SubproblemFailedError
from gauss_seidel.config import GsConfig
from gauss_seidel.cycles import detect_cycle, has_converged, window_spread
from gauss_seidel.subproblem import player_subproblem
from gauss_seidel.tau import TauRuleFactory, max_block_step
from instance_model import GneppInstance, feasibility_residual
from poly_core import PointLike
from pop_hierarchy import PopSolver
from solver_base import BaseSolver


class GsStatus(str, enum.Enum):
    CONVERGED = "Converged"
    CYCLE_DETECTED = "CycleDetected"
    SUBPROBLEM_INFEASIBLE = "SubproblemInfeasible"
    MAX_ITER_REACHED = "MaxIterReached"
    SUBPROBLEM_FAILED = "SubproblemFailed"


@dataclass
class SubproblemRecord:
    """Summary of one subproblem solve."""

    k: int
    player: int
    status: str
    bound: float
    order: int
    n_minimizers: int
    seconds: float


@dataclass
class GsTrace:
    """
    Full record of a Gauss-Seidel run.

    Attributes:
        iterates: x^(0), x^(1), ... after each full sweep
        substeps: Joint point after every single-player update, starting at x^(0)
        taus: tau^(k) used in sweep k+1
        subproblems: One record per subproblem solve
        status: Termination status
        period: Cycle period when status is CycleDetected
        failed_at: (k, i) of an infeasible or failed subproblem
        spread: Max pairwise difference over the convergence window at exit
        wall_time: Seconds spent in the loop
        message: Detail of the termination
    """

    instance: str = ""
    iterates: List[np.ndarray] = field(default_factory=list)
    substeps: List[np.ndarray] = field(default_factory=list)
    taus: List[float] = field(default_factory=list)
    subproblems: List[SubproblemRecord] = field(default_factory=list)
    status: GsStatus = GsStatus.MAX_ITER_REACHED
    period: Optional[int] = None
    failed_at: Optional[Tuple[int, int]] = None
    spread: float = float("inf")
    wall_time: float = 0.0
    message: str = ""
    error: Optional[SubproblemFailedError] = None

    @property
    def x(self) -> np.ndarray:
        return self.iterates[-1]

    @property
    def iterations(self) -> int:
        return len(self.iterates) - 1

    def status_text(self) -> str:
        if self.status == GsStatus.CYCLE_DETECTED:
            return f"{self.status.value} period={self.period}"
        if self.failed_at is not None:
            return f"{self.status.value} k={self.failed_at[0]} i={self.failed_at[1]}"
        return self.status.value


class GaussSeidelSolver(BaseSolver):
    """
    Runs the proximal Gauss-Seidel method on a GNEPP instance.

    Args:
        config: The `gauss_seidel` configuration section
        pop_config: Options of the subproblem hierarchy
        sdp_config: Options of the interior-point solver
    """

    config_section = "gauss_seidel"

    def __init__(self, config: Optional[Dict[str, Any]] = None, pop_config: Optional[Dict[str, Any]] = None,
                 sdp_config: Optional[Dict[str, Any]] = None):
        super().__init__(config)
        self.settings = GsConfig.from_dict(self.config)
        self.pop = PopSolver(pop_config, sdp_config)
        self.rule = TauRuleFactory.get_rule(self.settings.tau_rule)

    def solve(self, inst: GneppInstance, x0: PointLike) -> GsTrace:
        """
        Run the loop from x0.

        Args:
            inst: Instance
            x0: Starting point, ideally feasible

        Returns:
            GsTrace
        """
        cfg = self.settings
        layout = inst.layout
        x = layout.vector(x0).copy()
        started = time.perf_counter()

        feasibility = feasibility_residual(inst, x, cfg.feastol)
        if not feasibility.feasible:
            self.logger.warning(f"Starting point is infeasible (max violation {feasibility.max_violation:.3e})")

        tau = 0.0 if self.rule.name == "zero" else cfg.tau0
        trace = GsTrace(instance=inst.name, iterates=[x.copy()], substeps=[x.copy()], taus=[tau])
        self.logger.info(f"Gauss-Seidel on {inst.summary()}, tau0={tau}, rule={self.rule.name}")

        for k in range(1, cfg.max_iter + 1):
            x_prev = x.copy()
            for i in range(1, inst.n_players + 1):
                center = x_prev[layout.block_slice(i)]
                objective, constraints = player_subproblem(inst, i, x, tau, center, cfg.ball_radius)
                tick = time.perf_counter()
                try:
                    result = self.pop.solve(objective, constraints, layout.block_variables(i))
                except SolverError as e:
                    return self._finish(trace, started, GsStatus.SUBPROBLEM_FAILED, failed_at=(k, i),
                                        error=SubproblemFailedError(k, i, e))
                elapsed = time.perf_counter() - tick
                trace.subproblems.append(SubproblemRecord(
                    k=k, player=i, status=result.status.value, bound=result.bound, order=result.order,
                    n_minimizers=len(result.minimizers), seconds=elapsed,
                ))
                self.logger.debug(f"k={k}, i={i}: {result.summary()} ({elapsed:.3f}s)")

                if result.infeasible:
                    return self._finish(trace, started, GsStatus.SUBPROBLEM_INFEASIBLE, failed_at=(k, i),
                                        message=f"subproblem of player {i} in sweep {k} is infeasible")
                if not result.solved:
                    cause = SolverError(f"no global minimizer extracted ({result.summary()})")
                    return self._finish(trace, started, GsStatus.SUBPROBLEM_FAILED, failed_at=(k, i),
                                        error=SubproblemFailedError(k, i, cause))

                x[layout.block_slice(i)] = result.best_minimizer(center)
                trace.substeps.append(x.copy())

            trace.iterates.append(x.copy())
            step = max_block_step(layout, x, x_prev)
            tau = self.rule.update(tau, step)
            trace.taus.append(tau)
            trace.spread = window_spread(trace.iterates, cfg.conv_window)
            self.logger.info(f"Step {k}: max step {step:.3e}, tau {tau:.3e}, x = {np.round(x, 6).tolist()}")

            if has_converged(trace.iterates, cfg.conv_window, cfg.conv_tol):
                return self._finish(trace, started, GsStatus.CONVERGED)
            period = detect_cycle(trace.substeps, cfg.cycle_tol, cfg.cycle_max_period)
            if period is not None and period > 1:
                trace.period = period
                return self._finish(trace, started, GsStatus.CYCLE_DETECTED,
                                    message=f"sub-step points repeat with period {period}")

        return self._finish(trace, started, GsStatus.MAX_ITER_REACHED,
                            message=f"no convergence within {cfg.max_iter} sweeps")

    def _finish(self, trace: GsTrace, started: float, status: GsStatus, failed_at: Optional[Tuple[int, int]] = None,
                message: str = "", error: Optional[SubproblemFailedError] = None) -> GsTrace:
        trace.status = status
        trace.failed_at = failed_at
        trace.error = error
        trace.message = message or (str(error) if error else status.value)
        trace.spread = window_spread(trace.iterates, self.settings.conv_window)
        trace.wall_time = time.perf_counter() - started
        if error is not None:
            self.logger.error(str(error))
        else:
            self.logger.info(f"Finished with {trace.status_text()} after {trace.iterations} sweeps")
        return trace


def gs_solve(inst: GneppInstance, x0: PointLike, cfg: Optional[Dict[str, Any]] = None,
             pop_config: Optional[Dict[str, Any]] = None, sdp_config: Optional[Dict[str, Any]] = None) -> GsTrace:
    """
    Run a GaussSeidelSolver built from the given configuration sections.
    """
    return GaussSeidelSolver(cfg, pop_config, sdp_config).solve(inst, x0)
