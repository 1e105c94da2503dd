#!/usr/bin/env python3
# -*- coding: utf-8 -*-

"""
Moment-SOS hierarchy driver: solve relaxations of increasing order, test
flat truncation at every admissible level, and extract global minimizers.
"""

from typing import Any, Dict, List, Optional, Sequence, Tuple

import numpy as np

from exceptions import ExtractionError, SdpNumericalError
from instance_model import Constraint
from moment_relax import build_relaxation, constraint_order, min_order
from poly_core import Polynomial, Variable
from pop_hierarchy.extraction import extract_minimizers
from pop_hierarchy.flat_truncation import flat_truncation
from pop_hierarchy.refine import DEFAULT_POLISH_MAXITER, polish_minimizers
from pop_hierarchy.result import PopResult, PopStatus
from pop_hierarchy.univariate import UnivariateStatus, minimize_univariate
from sdp_solver import InteriorPointSolver, SdpStatus
from solver_base import BaseSolver

DEFAULT_POP_CONFIG: Dict[str, Any] = {
    "order_extra": 3,
    "order_max": None,
    "rank_tol": 1e-6,
    "feastol": 1e-8,
    "opt_tol": 1e-6,
    "extraction_seed": 0,
    "polish": True,
    "polish_maxiter": DEFAULT_POLISH_MAXITER,
    "univariate_fallback": True,
}


class PopSolver(BaseSolver):
    """
    Global minimization of one polynomial problem by the moment hierarchy.

    Orders whose SDP stops short of tolerance are skipped. A problem in one
    variable whose relaxations all run into trouble is solved exactly from
    polynomial roots instead.

    Args:
        config: The `pop` configuration section
        sdp_config: The `sdp` configuration section
    """

    config_section = "pop"

    def __init__(self, config: Optional[Dict[str, Any]] = None, sdp_config: Optional[Dict[str, Any]] = None):
        super().__init__(config)
        self.order_extra = int(self._option("order_extra", DEFAULT_POP_CONFIG["order_extra"]))
        order_max = self._option("order_max", DEFAULT_POP_CONFIG["order_max"])
        self.order_max = int(order_max) if order_max is not None else None
        self.rank_tol = float(self._option("rank_tol", DEFAULT_POP_CONFIG["rank_tol"]))
        self.feastol = float(self._option("feastol", DEFAULT_POP_CONFIG["feastol"]))
        self.opt_tol = float(self._option("opt_tol", DEFAULT_POP_CONFIG["opt_tol"]))
        self.seed = int(self._option("extraction_seed", DEFAULT_POP_CONFIG["extraction_seed"]))
        self.polish = bool(self._option("polish", DEFAULT_POP_CONFIG["polish"]))
        self.polish_maxiter = int(self._option("polish_maxiter", DEFAULT_POP_CONFIG["polish_maxiter"]))
        self.univariate_fallback = bool(self._option("univariate_fallback", DEFAULT_POP_CONFIG["univariate_fallback"]))
        self.sdp = InteriorPointSolver(sdp_config)

    def solve(
        self,
        objective: Polynomial,
        constraints: Sequence[Constraint] = (),
        variables: Optional[Sequence[Variable]] = None,
        order_max: Optional[int] = None,
    ) -> PopResult:
        """
        Minimize `objective` subject to `constraints`.

        Args:
            objective: Polynomial f
            constraints: Constraints g >= 0 / h == 0
            variables: Variables of the problem, default every layout variable
            order_max: Highest relaxation order, default the `order_max`
                option, else d_0 + order_extra

        Returns:
            PopResult

        Raises:
            SdpNumericalError: If no relaxation up to order_max is solved to
                tolerance; orders whose solve fails are skipped
        """
        variables = tuple(variables) if variables is not None else objective.layout.variables
        constraints, infeasible = self._drop_constants(constraints)
        if infeasible:
            return PopResult(status=PopStatus.INFEASIBLE, message="a constant constraint is violated")

        d0 = min_order(objective, constraints)
        d1 = constraint_order(constraints)
        if order_max is None:
            order_max = self.order_max
        d_max = order_max if order_max is not None else d0 + self.order_extra
        d_max = max(d_max, d0)

        bounds: List[float] = []
        iterations = 0
        flat_seen = False
        solved_orders: List[int] = []
        failures: List[str] = []
        for d in range(d0, d_max + 1):
            relaxation = build_relaxation(objective, constraints, d, variables)
            if relaxation.trivially_infeasible:
                return PopResult(status=PopStatus.INFEASIBLE, order=d, bounds=bounds,
                                 message="equality constraints are inconsistent")

            solution = self.sdp.solve(relaxation.sdp)
            iterations += solution.iterations
            if solution.status == SdpStatus.DUAL_INFEASIBLE:
                self.logger.debug(f"Order {d} relaxation has no feasible moment sequence")
                if self.univariate_fallback and len(variables) == 1:
                    fallback = self._solve_univariate(objective, constraints, variables[0], d, bounds, iterations,
                                                      [f"order {d}: relaxation infeasible"])
                    if fallback is not None:
                        return fallback
                return PopResult(status=PopStatus.INFEASIBLE, order=d, bounds=bounds,
                                 sdp_iterations=iterations, message="relaxation infeasible")
            if solution.status == SdpStatus.PRIMAL_INFEASIBLE:
                self.logger.debug(f"Order {d} relaxation is unbounded below")
                solved_orders.append(d)
                bounds.append(float("-inf"))
                continue
            if not solution.is_optimal:
                failures.append(f"order {d}: {solution.status.value} ({solution.message})")
                self.logger.warning(f"Order {d} relaxation ended with {solution.status.value}, max residual "
                                    f"{solution.max_residual():.2e}; raising the order")
                continue
            solved_orders.append(d)

            y = relaxation.tms_from_solution(solution)
            theta = relaxation.value(y)
            if bounds and np.isfinite(bounds[-1]) and theta < bounds[-1] - self.opt_tol * (1 + abs(theta)):
                self.logger.warning(f"Order {d} bound {theta:.10g} is below the previous bound {bounds[-1]:.10g}")
            bounds.append(theta)
            self.logger.debug(f"Order {d}: theta = {theta:.10g}")

            for t in range(d1, d + 1):
                flat = flat_truncation(y, d1, t, self.rank_tol)
                if not flat.holds:
                    continue
                flat_seen = True
                try:
                    extracted = extract_minimizers(y, t, flat.rank, self.seed)
                except ExtractionError as e:
                    self.logger.debug(f"Extraction at t={t} failed: {e}")
                    continue
                accepted, residuals = self._accept(objective, constraints, variables, theta, extracted.points)
                if accepted:
                    return PopResult(
                        status=PopStatus.MINIMIZERS_EXTRACTED, order=d, bound=theta,
                        minimizers=accepted, residuals=residuals, rank=flat.rank, level=t,
                        bounds=bounds, sdp_iterations=iterations,
                    )
                self.logger.debug(f"Flat truncation at t={t} but no extracted point passed the checks")

        # one-variable problems get an exact solve when the relaxations ran into trouble
        troubled = not solved_orders or failures or not np.isfinite(bounds[-1])
        if troubled and self.univariate_fallback and len(variables) == 1:
            fallback = self._solve_univariate(objective, constraints, variables[0], d_max, bounds, iterations,
                                              failures)
            if fallback is not None:
                return fallback
        if not solved_orders:
            raise SdpNumericalError(f"no relaxation up to order {d_max} was solved to tolerance: "
                                    + "; ".join(failures), order=d_max)
        message = "no minimizer extracted"
        if failures:
            message += "; " + "; ".join(failures)
        bound = bounds[-1] if bounds else float("-inf")
        if not np.isfinite(bound):
            return PopResult(status=PopStatus.BOUND_ONLY, order=solved_orders[-1], bound=float("-inf"),
                             bounds=bounds, unbounded=True, sdp_iterations=iterations,
                             message="relaxation unbounded below")
        status = PopStatus.BOUND_ONLY if flat_seen else PopStatus.ORDER_CAP_REACHED
        return PopResult(status=status, order=d_max, bound=bound, bounds=bounds, sdp_iterations=iterations,
                         message=message)

    def _solve_univariate(self, objective: Polynomial, constraints: Sequence[Constraint], variable: Variable,
                          order: int, bounds: List[float], iterations: int,
                          failures: List[str]) -> Optional[PopResult]:
        """
        Exact one-dimensional solve for when the relaxations ran into
        numerical trouble. Returns None when it finds no minimizer.
        """
        exact = minimize_univariate(objective, constraints, variable, self.feastol, self.opt_tol)
        note = "; ".join(failures) if failures else "relaxations unbounded below"
        self.logger.info(f"Relaxations did not converge ({note}); one-dimensional solve: {exact.status.value}")
        if exact.status == UnivariateStatus.INFEASIBLE:
            return PopResult(status=PopStatus.INFEASIBLE, order=order, bounds=bounds, sdp_iterations=iterations,
                             message="one-dimensional feasible set is empty")
        if exact.status != UnivariateStatus.SOLVED:
            return None
        return PopResult(
            status=PopStatus.MINIMIZERS_EXTRACTED, order=order, bound=exact.value,
            minimizers=[np.array([u]) for u in exact.points],
            residuals=[(v, 0.0) for v in exact.violations], bounds=bounds, sdp_iterations=iterations,
            message=f"one-dimensional solve after {note}",
        )

    def _drop_constants(self, constraints: Sequence[Constraint]) -> Tuple[List[Constraint], bool]:
        kept: List[Constraint] = []
        for c in constraints:
            if not c.poly.is_constant():
                kept.append(c)
            elif c.violation(c.poly.constant_term) > self.feastol:
                return kept, True
        return kept, False

    def _accept(self, objective: Polynomial, constraints: Sequence[Constraint], variables: Sequence[Variable],
                theta: float, points: Sequence[np.ndarray]):
        """
        Keep the atoms that, after polishing, satisfy the constraints to
        feastol and attain theta to opt_tol. An atom whose polished point
        fails is checked as extracted.
        """
        polished = polish_minimizers(objective, constraints, variables, points, self.polish_maxiter) \
            if self.polish else []
        accepted: List[np.ndarray] = []
        residuals: List[Tuple[float, float]] = []
        for k, u in enumerate(points):
            candidates = ([polished[k].point] if polished else []) + [np.asarray(u, dtype=float)]
            for v in candidates:
                values = dict(zip(variables, (float(c) for c in v)))
                violation = max((c.violation(c.poly.partial_eval(values).constant_term) for c in constraints),
                                default=0.0)
                gap = abs(objective.partial_eval(values).constant_term - theta)
                if violation > self.feastol or gap > self.opt_tol:
                    self.logger.debug(f"Candidate {np.round(v, 8)} rejected: violation {violation:.2e}, "
                                      f"gap {gap:.2e}")
                    continue
                if not any(np.allclose(v, w, atol=self.rank_tol, rtol=0.0) for w in accepted):
                    accepted.append(v)
                    residuals.append((violation, gap))
                break
        return accepted, residuals


def pop_minimize(
    objective: Polynomial,
    constraints: Sequence[Constraint] = (),
    opts: Optional[Dict[str, Any]] = None,
    variables: Optional[Sequence[Variable]] = None,
    sdp_config: Optional[Dict[str, Any]] = None,
    order_max: Optional[int] = None,
) -> PopResult:
    """
    Run the hierarchy with a PopSolver built from `opts`.
    """
    return PopSolver(opts, sdp_config).solve(objective, constraints, variables, order_max)
