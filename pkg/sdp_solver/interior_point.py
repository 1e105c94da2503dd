#!/usr/bin/env python3
# -*- coding: utf-8 -*-

"""
Dense primal-dual path-following interior-point method for SdpProblem.

HKM search direction with a Mehrotra predictor-corrector step. The Schur
complement of each PSD block is formed as A_j kron(X_j, S_j^-1) A_j^T; free
variables are kept in an augmented system [[M, B], [B^T, 0]] rather than
split into nonnegative parts.

Step lengths come from the eigenvalues of X^-1/2 dX X^-1/2 and are
shortened until the new blocks factor. A block that still loses
definiteness to rounding is shifted by a tiny multiple of the identity,
and a run that stops short of tol reports its least infeasible iterate.

Infeasibility is recognised two ways: ratio tests on diverging iterates,
and, when the main run ends without an answer, by solving the auxiliary
Farkas programs of SdpProblem to optimality.
"""

from dataclasses import dataclass
from typing import Any, Dict, List, Optional, Tuple

import numpy as np
from scipy import linalg

from sdp_solver.problem import SdpProblem, SdpSolution, SdpStatus
from solver_base import BaseSolver

# Default solver settings (mirrors the `sdp` configuration section)
DEFAULT_SDP_CONFIG: Dict[str, Any] = {
    "tol": 1e-9,
    "max_iter": 100,
    "infeas_tol": 1e-8,
    "step_fraction": 0.98,
    "min_step": 1e-10,
    "stall_limit": 5,
    "farkas": True,
}

# Regularization of the augmented Newton system
_REGULARIZATION = 1e-13
_REFINEMENT_STEPS = 2

# Relative identity shift restoring a block that lost definiteness
_SHIFT_START = 1e-14
_SHIFT_LIMIT = 1e-6

_BACKTRACK = 0.8
_BACKTRACK_STEPS = 40


class _NumericalBreakdown(Exception):
    """Internal signal for a failed factorization or non-finite iterate."""


@dataclass
class _Iterate:
    X: List[np.ndarray]
    x: np.ndarray
    z: np.ndarray
    y: np.ndarray
    S: List[np.ndarray]
    s: np.ndarray

    def copy(self) -> "_Iterate":
        return _Iterate(
            X=[X.copy() for X in self.X], x=self.x.copy(), z=self.z.copy(), y=self.y.copy(),
            S=[S.copy() for S in self.S], s=self.s.copy(),
        )


@dataclass
class _Residuals:
    rp: np.ndarray
    Rd: List[np.ndarray]
    rd_lp: np.ndarray
    r_free: np.ndarray
    pobj: float
    dobj: float
    pinf: float
    dinf: float
    gap: float


def _sym(M: np.ndarray) -> np.ndarray:
    return 0.5 * (M + M.T)


def _cholesky(M: np.ndarray) -> Optional[np.ndarray]:
    try:
        return linalg.cholesky(M, lower=True)
    except (linalg.LinAlgError, ValueError):
        return None


def _restore_definiteness(mats: List[np.ndarray], what: str) -> List[np.ndarray]:
    """
    Shift every block whose Cholesky factorization fails by the smallest
    multiple of the identity, growing from _SHIFT_START, that makes it pass.
    """
    out = []
    for M in mats:
        if _cholesky(M) is None:
            scale = 1.0 + float(np.max(np.abs(np.diag(M))))
            eye = np.eye(M.shape[0])
            shift = _SHIFT_START
            while _cholesky(M + shift * scale * eye) is None:
                shift *= 100.0
                if shift > _SHIFT_LIMIT:
                    raise _NumericalBreakdown(f"{what} lost definiteness beyond recovery")
            M = M + shift * scale * eye
        out.append(M)
    return out


class _AugmentedSystem:
    """
    LU factorization of [[M + dI, B], [B^T, -dI]] with iterative refinement
    against the unregularized matrix.
    """

    def __init__(self, M: np.ndarray, B: np.ndarray):
        m, k = M.shape[0], B.shape[1]
        K = np.zeros((m + k, m + k))
        K[:m, :m] = M
        K[:m, m:] = B
        K[m:, :m] = B.T
        scale = max(1.0, float(np.max(np.abs(np.diag(M)))) if m else 1.0)
        delta = _REGULARIZATION * scale
        regularized = K.copy()
        regularized[:m, :m] += delta * np.eye(m)
        regularized[m:, m:] -= delta * np.eye(k)
        self.m = m
        self.K = K
        with np.errstate(all="raise"):
            try:
                self.lu = linalg.lu_factor(regularized, check_finite=True)
            except (ValueError, FloatingPointError, linalg.LinAlgError) as e:
                raise _NumericalBreakdown(f"Schur complement factorization failed: {e}") from e

    def solve(self, r1: np.ndarray, r2: np.ndarray) -> Tuple[np.ndarray, np.ndarray]:
        rhs = np.concatenate([r1, r2])
        sol = linalg.lu_solve(self.lu, rhs)
        for _ in range(_REFINEMENT_STEPS):
            sol = sol + linalg.lu_solve(self.lu, rhs - self.K @ sol)
        if not np.all(np.isfinite(sol)):
            raise _NumericalBreakdown("non-finite Newton direction")
        return sol[: self.m], sol[self.m:]


class InteriorPointSolver(BaseSolver):
    """
    Primal-dual interior-point solver for small dense block SDPs.

    Config keys (section `sdp`): tol, max_iter, infeas_tol, step_fraction,
    min_step, stall_limit, farkas.
    """

    config_section = "sdp"

    def __init__(self, config: Optional[Dict[str, Any]] = None):
        super().__init__(config)
        self.tol = float(self._option("tol", DEFAULT_SDP_CONFIG["tol"]))
        self.max_iter = int(self._option("max_iter", DEFAULT_SDP_CONFIG["max_iter"]))
        self.infeas_tol = float(self._option("infeas_tol", DEFAULT_SDP_CONFIG["infeas_tol"]))
        self.step_fraction = float(self._option("step_fraction", DEFAULT_SDP_CONFIG["step_fraction"]))
        self.min_step = float(self._option("min_step", DEFAULT_SDP_CONFIG["min_step"]))
        self.stall_limit = int(self._option("stall_limit", DEFAULT_SDP_CONFIG["stall_limit"]))
        self.use_farkas = bool(self._option("farkas", DEFAULT_SDP_CONFIG["farkas"]))

    def solve(self, problem: SdpProblem) -> SdpSolution:
        """
        Solve an SDP.

        Args:
            problem: The SDP to solve

        Returns:
            SdpSolution; Optimal only when every relative residual is <= tol
        """
        self.logger.debug(f"Solving {problem.describe()}")
        solution = self._run(problem)
        if solution.status in (SdpStatus.MAX_ITER, SdpStatus.NUMERICAL_FAILURE) and self.use_farkas:
            certified = self._farkas(problem)
            if certified is not None:
                certified.iterations += solution.iterations
                solution = certified
        self.logger.debug(solution.summary())
        return solution

    def _farkas(self, problem: SdpProblem) -> Optional[SdpSolution]:
        """
        Try to certify infeasibility of either side by solving the
        auxiliary ray programs.
        """
        aux = self._run(problem.dual_infeasibility_problem())
        if aux.status == SdpStatus.OPTIMAL:
            self.logger.debug("Improving primal ray found: dual program is infeasible")
            return SdpSolution(
                status=SdpStatus.DUAL_INFEASIBLE, X=aux.X, x_lp=aux.x_lp, z=aux.z,
                primal_objective=float("-inf"), dual_objective=float("-inf"),
                iterations=aux.iterations, message="improving primal ray",
                certificate_residual=aux.primal_residual,
            )
        aux = self._run(problem.primal_infeasibility_problem())
        if aux.status == SdpStatus.OPTIMAL:
            self.logger.debug("Farkas ray found: primal program is infeasible")
            return SdpSolution(
                status=SdpStatus.PRIMAL_INFEASIBLE, y=aux.y, S=aux.S, s_lp=aux.s_lp,
                primal_objective=float("inf"), dual_objective=float("inf"),
                iterations=aux.iterations, message="Farkas ray",
                certificate_residual=aux.dual_residual,
            )
        return None

    # ------------------------------------------------------------------
    # main iteration
    # ------------------------------------------------------------------
    def _run(self, p: SdpProblem) -> SdpSolution:
        it = self._initial_point(p)
        nu = p.n_cone
        b_norm = 1.0 + float(np.linalg.norm(p.b))
        c_norm = 1.0 + p.objective_norm()
        stall = 0
        best: Optional[Tuple[float, _Iterate, _Residuals]] = None

        for k in range(1, self.max_iter + 1):
            res = self._residuals(p, it, b_norm, c_norm)
            if not all(np.isfinite([res.pobj, res.dobj, res.pinf, res.dinf])):
                return self._best_solution(SdpStatus.NUMERICAL_FAILURE, best, it, k - 1, "non-finite iterate")
            if res.pinf <= self.tol and res.dinf <= self.tol and res.gap <= self.tol:
                return self._solution(SdpStatus.OPTIMAL, it, res, k - 1, "optimal")
            merit = max(res.pinf, res.dinf, res.gap)
            if best is None or merit < best[0]:
                best = (merit, it.copy(), res)
            ray = self._ratio_test(p, it, res)
            if ray is not None:
                return self._solution(ray, it, res, k - 1, "diverging iterates")

            try:
                alpha_p, alpha_d = self._step(p, it, nu)
            except _NumericalBreakdown as e:
                return self._best_solution(SdpStatus.NUMERICAL_FAILURE, best, it, k - 1, str(e))

            if min(alpha_p, alpha_d) < self.min_step:
                stall += 1
                if stall >= self.stall_limit:
                    return self._best_solution(SdpStatus.NUMERICAL_FAILURE, best, it, k,
                                               f"step length below {self.min_step} for {stall} iterations")
            else:
                stall = 0

        res = self._residuals(p, it, b_norm, c_norm)
        if res.pinf <= self.tol and res.dinf <= self.tol and res.gap <= self.tol:
            return self._solution(SdpStatus.OPTIMAL, it, res, self.max_iter, "optimal")
        if np.isfinite(res.pinf) and (best is None or max(res.pinf, res.dinf, res.gap) < best[0]):
            best = (max(res.pinf, res.dinf, res.gap), it.copy(), res)
        return self._best_solution(SdpStatus.MAX_ITER, best, it, self.max_iter, "iteration limit reached")

    def _best_solution(self, status: SdpStatus, best: Optional[Tuple[float, _Iterate, _Residuals]],
                       it: _Iterate, iterations: int, message: str) -> SdpSolution:
        """
        Report a run that did not converge through its least infeasible iterate.
        """
        if best is None:
            return self._solution(status, it, None, iterations, message)
        self.logger.debug(f"{message}; returning the iterate with max residual {best[0]:.2e}")
        return self._solution(status, best[1], best[2], iterations, message)

    def _initial_point(self, p: SdpProblem) -> _Iterate:
        """
        X = xi I, S = eta I scaled by the data norms; y = 0, z = 0.
        """
        size = max(list(p.psd_sizes) + [1])
        row_norms = np.zeros(p.m)
        for A in p.A_psd:
            row_norms += np.asarray(A.multiply(A).sum(axis=1)).reshape(-1)
        if p.n_lp:
            row_norms += np.asarray(p.A_lp.multiply(p.A_lp).sum(axis=1)).reshape(-1)
        row_norms = np.sqrt(row_norms)
        xi = max(10.0, np.sqrt(size), float(np.max((1.0 + np.abs(p.b)) / (1.0 + row_norms), initial=0.0)))
        eta = max(10.0, np.sqrt(size), p.objective_norm(), float(np.max(row_norms, initial=0.0)))
        return _Iterate(
            X=[xi * np.eye(n) for n in p.psd_sizes],
            x=np.full(p.n_lp, xi),
            z=np.zeros(p.n_free),
            y=np.zeros(p.m),
            S=[eta * np.eye(n) for n in p.psd_sizes],
            s=np.full(p.n_lp, eta),
        )

    def _residuals(self, p: SdpProblem, it: _Iterate, b_norm: float, c_norm: float) -> _Residuals:
        rp = p.b - p.apply(it.X, it.x, it.z)
        adj, adj_lp, adj_free = p.adjoint(it.y)
        Rd = [C - Aty - S for C, Aty, S in zip(p.C_psd, adj, it.S)]
        rd_lp = p.c_lp - adj_lp - it.s
        r_free = p.c_free - adj_free
        pobj = p.primal_objective(it.X, it.x, it.z)
        dobj = float(p.b @ it.y)
        dual_norm = np.sqrt(sum(float(np.sum(R * R)) for R in Rd) + rd_lp @ rd_lp + r_free @ r_free)
        return _Residuals(
            rp=rp, Rd=Rd, rd_lp=rd_lp, r_free=r_free, pobj=pobj, dobj=dobj,
            pinf=float(np.linalg.norm(rp)) / b_norm,
            dinf=float(dual_norm) / c_norm,
            gap=abs(pobj - dobj) / (1.0 + abs(pobj) + abs(dobj)),
        )

    def _ratio_test(self, p: SdpProblem, it: _Iterate, res: _Residuals) -> Optional[SdpStatus]:
        """
        Detect diverging iterates that approximate an infeasibility ray.
        """
        if res.dobj > 0:
            adj, adj_lp, adj_free = p.adjoint(it.y)
            ray = np.sqrt(
                sum(float(np.sum((A + S) ** 2)) for A, S in zip(adj, it.S))
                + float(np.sum((adj_lp + it.s) ** 2))
                + float(adj_free @ adj_free)
            )
            if ray / res.dobj <= self.infeas_tol:
                return SdpStatus.PRIMAL_INFEASIBLE
        if res.pobj < 0:
            image = p.apply(it.X, it.x, it.z)
            if float(np.linalg.norm(image)) / (-res.pobj) <= self.infeas_tol:
                return SdpStatus.DUAL_INFEASIBLE
        return None

    def _step(self, p: SdpProblem, it: _Iterate, nu: int) -> Tuple[float, float]:
        """
        One predictor-corrector step; updates `it` in place and returns the
        primal and dual step lengths.
        """
        it.X = _restore_definiteness(it.X, "primal iterate")
        it.S = _restore_definiteness(it.S, "dual slack")
        b_norm = 1.0 + float(np.linalg.norm(p.b))
        res = self._residuals(p, it, b_norm, 1.0)
        mu = (sum(float(np.sum(X * S)) for X, S in zip(it.X, it.S)) + float(it.x @ it.s)) / nu

        S_inv = []
        for S in it.S:
            L = _cholesky(S)
            S_inv.append(_sym(linalg.cho_solve((L, True), np.eye(S.shape[0]))))

        M = np.zeros((p.m, p.m))
        for A, X, Si in zip(p.A_psd, it.X, S_inv):
            G = A @ np.kron(X, Si)
            M += np.asarray(A @ G.T)
        if p.n_lp:
            D = it.x / it.s
            M += (p.A_lp.multiply(D.reshape(1, -1)) @ p.A_lp.T).toarray()
        system = _AugmentedSystem(_sym(M), p.B)

        # predictor
        Rc = [-(X @ S) for X, S in zip(it.X, it.S)]
        rc_lp = -it.x * it.s
        dX_a, dx_a, dz_a, dy_a, dS_a, ds_a = self._direction(p, it, S_inv, res, Rc, rc_lp, system)
        ap_aff = min(1.0, self._max_step(it.X, it.x, dX_a, dx_a))
        ad_aff = min(1.0, self._max_step(it.S, it.s, dS_a, ds_a))
        mu_aff = (
            sum(float(np.sum((X + ap_aff * dX) * (S + ad_aff * dS)))
                for X, dX, S, dS in zip(it.X, dX_a, it.S, dS_a))
            + float((it.x + ap_aff * dx_a) @ (it.s + ad_aff * ds_a))
        ) / nu
        sigma = float(np.clip((mu_aff / mu) ** 3, 0.0, 1.0)) if mu > 0 else 0.0

        # corrector
        Rc = [
            sigma * mu * np.eye(X.shape[0]) - X @ S - dX @ dS
            for X, S, dX, dS in zip(it.X, it.S, dX_a, dS_a)
        ]
        rc_lp = sigma * mu - it.x * it.s - dx_a * ds_a
        dX, dx, dz, dy, dS, ds = self._direction(p, it, S_inv, res, Rc, rc_lp, system)

        alpha_p = min(1.0, self.step_fraction * self._max_step(it.X, it.x, dX, dx))
        alpha_d = min(1.0, self.step_fraction * self._max_step(it.S, it.s, dS, ds))
        alpha_p = self._backtrack(it.X, dX, alpha_p)
        alpha_d = self._backtrack(it.S, dS, alpha_d)

        it.X = [_sym(X + alpha_p * d) for X, d in zip(it.X, dX)]
        it.x = it.x + alpha_p * dx
        it.z = it.z + alpha_p * dz
        it.y = it.y + alpha_d * dy
        it.S = [_sym(S + alpha_d * d) for S, d in zip(it.S, dS)]
        it.s = it.s + alpha_d * ds
        return alpha_p, alpha_d

    def _direction(self, p: SdpProblem, it: _Iterate, S_inv: List[np.ndarray], res: _Residuals,
                   Rc: List[np.ndarray], rc_lp: np.ndarray, system: _AugmentedSystem):
        rhs = res.rp.copy()
        for A, X, Si, R, Rcj in zip(p.A_psd, it.X, S_inv, res.Rd, Rc):
            T = _sym((Rcj - X @ R) @ Si)
            rhs -= A @ T.reshape(-1)
        if p.n_lp:
            rhs -= p.A_lp @ ((rc_lp - it.x * res.rd_lp) / it.s)
        dy, dz = system.solve(rhs, res.r_free)

        adj, adj_lp, _ = p.adjoint(dy)
        dS = [R - a for R, a in zip(res.Rd, adj)]
        dX = [_sym((Rcj - X @ d) @ Si) for Rcj, X, d, Si in zip(Rc, it.X, dS, S_inv)]
        ds = res.rd_lp - adj_lp
        dx = (rc_lp - it.x * ds) / it.s if p.n_lp else np.zeros(0)
        return dX, dx, dz, dy, dS, ds

    @staticmethod
    def _max_step(mats: List[np.ndarray], vec: np.ndarray, dmats: List[np.ndarray], dvec: np.ndarray) -> float:
        """
        Largest alpha keeping every block psd and the LP part nonnegative.
        """
        alpha = np.inf
        for X, dX in zip(mats, dmats):
            # eigenvalues of X^-1/2 dX X^-1/2
            try:
                lam, Q = linalg.eigh(X)
                if not lam[-1] > 0:
                    raise _NumericalBreakdown("iterate lost definiteness")
                R = Q / np.sqrt(np.maximum(lam, np.finfo(float).eps * lam[-1]))
                lam = float(linalg.eigvalsh(_sym(R.T @ dX @ R))[0])
            except (ValueError, linalg.LinAlgError) as e:
                raise _NumericalBreakdown(f"step length computation failed: {e}") from e
            if lam < 0:
                alpha = min(alpha, -1.0 / lam)
        neg = dvec < 0
        if np.any(neg):
            alpha = min(alpha, float(np.min(-vec[neg] / dvec[neg])))
        return alpha

    @staticmethod
    def _backtrack(mats: List[np.ndarray], dmats: List[np.ndarray], alpha: float) -> float:
        """
        Shrink alpha until every updated block has a Cholesky factor; 0 when
        no tried step keeps the blocks positive definite.
        """
        for _ in range(_BACKTRACK_STEPS):
            if all(_cholesky(_sym(M + alpha * d)) is not None for M, d in zip(mats, dmats)):
                return alpha
            alpha *= _BACKTRACK
        return 0.0

    def _solution(self, status: SdpStatus, it: _Iterate, res: Optional[_Residuals], iterations: int,
                  message: str) -> SdpSolution:
        sol = SdpSolution(
            status=status,
            X=[X.copy() for X in it.X], x_lp=it.x.copy(), z=it.z.copy(), y=it.y.copy(),
            S=[S.copy() for S in it.S], s_lp=it.s.copy(),
            iterations=iterations, message=message,
        )
        if res is not None:
            sol.primal_objective = res.pobj
            sol.dual_objective = res.dobj
            sol.primal_residual = res.pinf
            sol.dual_residual = res.dinf
            sol.gap = res.gap
        return sol


def solve(problem: SdpProblem, tol: Optional[float] = None, max_iter: Optional[int] = None,
          config: Optional[Dict[str, Any]] = None) -> SdpSolution:
    """
    Solve an SDP with an InteriorPointSolver built from `config`, with
    optional overrides of tol and max_iter.
    """
    settings = dict(config or {})
    if tol is not None:
        settings["tol"] = tol
    if max_iter is not None:
        settings["max_iter"] = max_iter
    return InteriorPointSolver(settings).solve(problem)
