#!/usr/bin/env python3
# -*- coding: utf-8 -*-

"""
Semidefinite certificate that a GNEPP is a generalized potential game.

For a degree 2d the program looks for P = p^T [x]_2d and, per player,
q_{i,0}, q_{i,1} in the truncated quadratic module of h_i with

    P(y_i, x_{-i}) - P(x) == (q_{i,0} + 1) * Delta f_i + q_{i,1}

as a polynomial identity in (x, y_i). Each q is parameterized by Gram
matrices Q^t over [x, y_i]_{d - ceil(deg h_t / 2)}; the objective is the
total trace of the Gram matrices.
"""

from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional, Tuple

import numpy as np
from scipy import linalg

from exceptions import InputError
from gpg_certifier.ki import KiTuple, build_ki, delta_p
from instance_model import Constraint, GneppInstance, Relation
from moment_relax import MomentIndex, half_degree
from poly_core import Polynomial
from sdp_solver import InteriorPointSolver, SdpBuilder, SdpStatus
from solver_base import BaseSolver

DEFAULT_CERTIFY_CONFIG: Dict[str, Any] = {
    "cert_tol": 1e-6,
    "degree": None,
    "retries": 1,
}

# Kinds of multiplier: q_{i,0} multiplies Delta f_i, q_{i,1} stands alone
Q0, Q1 = 0, 1


@dataclass
class GramBlock:
    player: int
    kind: int
    t: int
    label: str
    basis: Tuple[Tuple[int, ...], ...]
    block: int


@dataclass
class GpgCertificate:
    """
    A solved certificate.

    Attributes:
        order: d, so P has degree 2d
        potential: P
        p: Coefficients of P over [x]_2d without the constant term
        grams: Gram matrix per (i, kind, t)
        multipliers: q_{i,0} and q_{i,1} per (i, kind), reconstructed from the Gram matrices
        residuals: Coefficient infinity norm of the identity per player
        min_eigenvalues: Smallest eigenvalue per (i, kind, t)
        suboptimal: The SDP stopped before meeting its optimality tolerance
    """

    order: int
    potential: Polynomial
    p: np.ndarray
    grams: Dict[Tuple[int, int, int], np.ndarray] = field(default_factory=dict)
    multipliers: Dict[Tuple[int, int], Polynomial] = field(default_factory=dict)
    residuals: List[float] = field(default_factory=list)
    min_eigenvalues: Dict[Tuple[int, int, int], float] = field(default_factory=dict)
    suboptimal: bool = False

    @property
    def degree(self) -> int:
        return 2 * self.order

    @property
    def max_residual(self) -> float:
        return max(self.residuals, default=0.0)

    @property
    def min_eigenvalue(self) -> float:
        return min(self.min_eigenvalues.values(), default=0.0)


@dataclass
class CertifyResult:
    """
    Outcome of a certification attempt.

    Attributes:
        certified: A valid certificate was found
        certificate: The last certificate computed, valid or not
        reason: Why certification failed
        orders_tried: Every d attempted
        shared_constraints: Result of the syntactic shared-constraint screen
    """

    certified: bool
    certificate: Optional[GpgCertificate] = None
    reason: str = ""
    orders_tried: List[int] = field(default_factory=list)
    shared_constraints: bool = True

    @property
    def status(self) -> str:
        return "Certified" if self.certified else "NotCertified"


def default_order(inst: GneppInstance) -> int:
    """max_i ceil(deg f_i / 2) + 1."""
    return max(half_degree(p.objective) for p in inst.players) + 1


def _canonical(c: Constraint) -> Tuple:
    poly = c.poly
    scale = poly.max_abs_coefficient()
    if scale > 0:
        poly = poly.scale(1.0 / scale)
    terms = poly.sorted_terms()
    if c.relation == Relation.EQ and terms and terms[0][1] < 0:
        poly = -poly
        terms = poly.sorted_terms()
    return c.relation.value, tuple((m, round(v, 9)) for m, v in terms)


def shared_constraints(inst: GneppInstance) -> bool:
    """
    True when every player lists the same constraint set (up to scaling
    and the sign of equalities).
    """
    sets = [frozenset(_canonical(c) for c in p.constraints) for p in inst.players]
    return all(s == sets[0] for s in sets[1:])


class GpgCertifier(BaseSolver):
    """
    Builds and solves the certificate program.

    Args:
        config: The `certify` configuration section
        sdp_config: The `sdp` configuration section
    """

    config_section = "certify"

    def __init__(self, config: Optional[Dict[str, Any]] = None, sdp_config: Optional[Dict[str, Any]] = None):
        super().__init__(config)
        self.cert_tol = float(self._option("cert_tol", DEFAULT_CERTIFY_CONFIG["cert_tol"]))
        self.degree = self._option("degree", DEFAULT_CERTIFY_CONFIG["degree"])
        self.retries = int(self._option("retries", DEFAULT_CERTIFY_CONFIG["retries"]))
        self.sdp = InteriorPointSolver(sdp_config)

    def solve(self, inst: GneppInstance, order: Optional[int] = None) -> CertifyResult:
        """
        Certify at order d (default from config or max ceil(deg f_i / 2) + 1),
        retrying at higher orders on failure.

        Args:
            inst: Instance
            order: d, the certificate has degree 2d

        Returns:
            CertifyResult
        """
        shared = shared_constraints(inst)
        if not shared:
            self.logger.warning("Players' constraint lists differ; the shared-set condition must be checked by hand")

        if order is not None:
            d = order
        elif self.degree is not None:
            d = (int(self.degree) + 1) // 2
        else:
            d = default_order(inst)
        if d < 1:
            raise InputError(f"certificate order must be >= 1, got {d}")
        result = CertifyResult(certified=False, shared_constraints=shared)
        for attempt in range(self.retries + 1):
            current = d + attempt
            result.orders_tried.append(current)
            self.logger.info(f"Certifying {inst.name} at degree {2 * current}")
            certificate, reason = self.certify_at(inst, current)
            result.certificate = certificate or result.certificate
            result.reason = reason
            if not reason:
                result.certified = True
                return result
            self.logger.info(f"Degree {2 * current}: {reason}")
        return result

    def certify_at(self, inst: GneppInstance, d: int) -> Tuple[Optional[GpgCertificate], str]:
        """
        One attempt at order d.

        Returns:
            (certificate or None, failure reason or "")
        """
        x_vars = inst.layout.variables
        p_index = MomentIndex(x_vars, 2 * d)
        n_p = len(p_index) - 1

        tuples = [build_ki(inst, i) for i in range(1, inst.n_players + 1)]
        row_indices = [MomentIndex(ki.variables, 2 * d + ki.polys[-1].degree) for ki in tuples]
        offsets = np.cumsum([0] + [len(idx) for idx in row_indices])
        builder = SdpBuilder(int(offsets[-1]))

        b = np.zeros(builder.m)
        B = np.zeros((builder.m, n_p))
        grams: List[GramBlock] = []
        for ki, idx, offset in zip(tuples, row_indices, offsets[:-1]):
            df = ki.polys[-1]
            b[offset: offset + len(idx)] = idx.coefficients(df)
            self._potential_columns(inst, ki.player, p_index, idx, int(offset), B)
            for t, h in enumerate(ki.polys):
                s = d - half_degree(h)
                if s < 0:
                    self.logger.debug(f"h_{ki.player},{t} ({ki.labels[t]}) does not fit degree {2 * d}")
                    continue
                basis = tuple(idx.exponents[: idx.prefix(s)])
                for kind, mult in ((Q0, h * df), (Q1, h)):
                    label = f"Q{ki.player},{kind}^{t}"
                    block = builder.add_psd_block(len(basis), label)
                    builder.set_psd_objective(block, np.eye(len(basis)))
                    self._gram_entries(builder, block, basis, mult, idx, int(offset))
                    grams.append(GramBlock(ki.player, kind, t, label, basis, block))

        builder.set_rhs(b)
        for k in range(n_p):
            builder.add_free(B[:, k], 0.0)
        problem = builder.build()
        reduced, _, inconsistency = problem.independent_rows()
        self.logger.debug(f"Certificate program: {problem.describe()}, {reduced.m} independent rows")
        if inconsistency > self.cert_tol:
            return None, f"coefficient identity has no solution at degree {2 * d}"

        solution = self.sdp.solve(reduced)
        if solution.status in (SdpStatus.PRIMAL_INFEASIBLE, SdpStatus.DUAL_INFEASIBLE):
            return None, f"no degree-{2 * d} certificate ({solution.status.value})"

        certificate = self._reconstruct(inst, d, tuples, p_index, grams, solution.X, solution.z)
        certificate.suboptimal = not solution.is_optimal
        if certificate.suboptimal:
            return certificate, (f"SDP ended with {solution.status.value} ({solution.message}), max residual "
                                 f"{solution.max_residual():.2e}")
        if certificate.max_residual > self.cert_tol or certificate.min_eigenvalue < -self.cert_tol:
            return certificate, (f"identity residual {certificate.max_residual:.2e}, "
                                 f"min Gram eigenvalue {certificate.min_eigenvalue:.2e}")
        return certificate, ""

    @staticmethod
    def _potential_columns(inst: GneppInstance, i: int, p_index: MomentIndex, idx: MomentIndex, offset: int,
                           B: np.ndarray) -> None:
        """
        Column k of B gets the coefficients of beta_k(y_i, x_{-i}) - beta_k(x).
        """
        sl = inst.layout.block_slice(i)
        for k in range(1, len(p_index)):
            beta = np.array(p_index.exponents[k], dtype=int)
            moved = beta.copy()
            moved[sl] = 0
            original = tuple(beta.tolist()) + (0,) * (sl.stop - sl.start)
            copied = tuple(moved.tolist()) + tuple(beta[sl].tolist())
            if original == copied:
                continue
            B[offset + idx.position(copied), k - 1] += 1.0
            B[offset + idx.position(original), k - 1] -= 1.0

    @staticmethod
    def _gram_entries(builder: SdpBuilder, block: int, basis, mult: Polynomial, idx: MomentIndex,
                      offset: int) -> None:
        """
        Row alpha gets -coef_alpha(m_a m_b mult) on entry (a, b).
        """
        terms = [(np.array(e, dtype=int), c) for e, c in mult.exponent_dict(idx.variables).items()]
        exps = np.array(basis, dtype=int).reshape(len(basis), -1)
        rows, a_list, b_list, values = [], [], [], []
        for a in range(len(basis)):
            for b in range(a, len(basis)):
                base = exps[a] + exps[b]
                for gamma, coef in terms:
                    rows.append(offset + idx.position(tuple((base + gamma).tolist())))
                    a_list.append(a)
                    b_list.append(b)
                    values.append(-coef)
        builder.add_psd_coefficients(block, rows, a_list, b_list, values)

    def _reconstruct(self, inst: GneppInstance, d: int, tuples: List[KiTuple], p_index: MomentIndex,
                     grams: List[GramBlock], X: List[np.ndarray], z: np.ndarray) -> GpgCertificate:
        layout = inst.layout
        coeffs = {p_index.exponents[k]: z[k - 1] for k in range(1, len(p_index))}
        potential = Polynomial.from_exponent_dict(coeffs, p_index.variables, layout)
        certificate = GpgCertificate(order=d, potential=potential, p=np.asarray(z, dtype=float).copy())

        for ki in tuples:
            zero = Polynomial.zero(ki.layout)
            certificate.multipliers[(ki.player, Q0)] = zero
            certificate.multipliers[(ki.player, Q1)] = zero
        for g in grams:
            ki = tuples[g.player - 1]
            Q = 0.5 * (X[g.block] + X[g.block].T)
            certificate.grams[(g.player, g.kind, g.t)] = Q
            certificate.min_eigenvalues[(g.player, g.kind, g.t)] = float(linalg.eigvalsh(Q)[0])
            sos = _gram_polynomial(Q, g.basis, ki)
            key = (g.player, g.kind)
            certificate.multipliers[key] = certificate.multipliers[key] + sos * ki.polys[g.t]

        for ki in tuples:
            df = ki.polys[-1]
            lhs = delta_p(potential, inst, ki.player)
            rhs = (certificate.multipliers[(ki.player, Q0)] + 1.0) * df + certificate.multipliers[(ki.player, Q1)]
            certificate.residuals.append((lhs - rhs).coefficient_norm())
        return certificate


def _gram_polynomial(Q: np.ndarray, basis, ki: KiTuple) -> Polynomial:
    """[v]^T Q [v] for the monomial vector `basis`."""
    coeffs: Dict[Tuple[int, ...], float] = {}
    exps = np.array(basis, dtype=int).reshape(len(basis), -1)
    for a in range(len(basis)):
        for b in range(len(basis)):
            key = tuple((exps[a] + exps[b]).tolist())
            coeffs[key] = coeffs.get(key, 0.0) + float(Q[a, b])
    return Polynomial.from_exponent_dict(coeffs, ki.variables, ki.layout)


def certify(inst: GneppInstance, d: Optional[int] = None, cert_tol: Optional[float] = None,
            config: Optional[Dict[str, Any]] = None, sdp_config: Optional[Dict[str, Any]] = None) -> CertifyResult:
    """
    Certify that inst is a generalized potential game.
    """
    settings = dict(config or {})
    if cert_tol is not None:
        settings["cert_tol"] = cert_tol
    return GpgCertifier(settings, sdp_config).solve(inst, d)
