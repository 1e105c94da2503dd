#!/usr/bin/env python3
# -*- coding: utf-8 -*-

"""
Order-d moment relaxation of  min f  s.t.  g_j >= 0,  h_l == 0.

The relaxation is written as the dual side of an SdpProblem: the moment
vector y is the dual variable, the objective max -<f, y> is carried by
b = -f, and every PSD block C - A^T y equals a localizing matrix. The
normalization y_0 = 1 and the equality rows <h * x^m, y> = 0 are free
columns of B. The primal side is then the SOS program whose optimal value
is -theta_d.

The equality rows force L(y) v = 0 for every coefficient vector v of
h * x^beta that fits the basis of a block, so each PSD block is restricted
to the orthogonal complement P of those vectors: P^T L(y) P >= 0 is
equivalent under the equalities and keeps the moment side strictly
feasible.
"""

import logging
from dataclasses import dataclass, field
from typing import List, Optional, Sequence, Tuple

import numpy as np
from scipy import linalg

from exceptions import DegreeError
from instance_model import Constraint
from moment_relax.localizing import LocalizingForm, half_degree, localizing
from moment_relax.tms import MomentIndex, Tms
from poly_core import Polynomial, Variable
from sdp_solver import SdpBuilder, SdpProblem, SdpSolution

logger = logging.getLogger(__name__)

# Relative pivot size below which an equality row is treated as dependent
_RANK_TOL = 1e-10


@dataclass
class MomentRelaxation:
    """
    An assembled relaxation and the maps back to moments.

    Attributes:
        sdp: The SDP to solve
        index: Moment index of degree 2d
        order: Relaxation order d
        objective: Coefficient vector of f over `index`
        moment_form: M_d as a LocalizingForm
        forms: Localizing forms of the inequality constraints, in order
        equality_rows: Number of independent equality rows kept
        trivially_infeasible: The equalities alone force y_0 = 0
        face_dims: Side of the moment block, then of each inequality block,
            after restriction by the equalities; 0 when a block vanishes
    """

    sdp: SdpProblem
    index: MomentIndex
    order: int
    objective: np.ndarray
    moment_form: LocalizingForm
    forms: List[LocalizingForm] = field(default_factory=list)
    equality_rows: int = 0
    trivially_infeasible: bool = False
    face_dims: List[int] = field(default_factory=list)

    @property
    def variables(self) -> Tuple[Variable, ...]:
        return self.index.variables

    def tms_from_solution(self, solution: SdpSolution) -> Tms:
        return Tms(self.index, solution.y)

    def value(self, y: Tms) -> float:
        """theta_d = <f, y>."""
        return float(self.objective @ y.values)


def min_order(objective: Polynomial, constraints: Sequence[Constraint]) -> int:
    """
    d_0: the smallest order every polynomial fits, at least 1.
    """
    return max([1, half_degree(objective)] + [half_degree(c.poly) for c in constraints])


def constraint_order(constraints: Sequence[Constraint]) -> int:
    """
    d_1: max over the constraints of ceil(deg / 2), at least 1.
    """
    return max([1] + [half_degree(c.poly) for c in constraints])


def _multiples(h: Polynomial, index: MomentIndex, shift_degree: int, size: int) -> np.ndarray:
    """
    Coefficient vectors of h * x^m, deg m <= shift_degree, over the first
    `size` monomials of `index`.
    """
    if shift_degree < 0:
        return np.zeros((size, 0))
    terms = [(np.array(e, dtype=int), c) for e, c in h.exponent_dict(index.variables).items()]
    count = index.prefix(shift_degree)
    cols = np.zeros((size, count))
    for k in range(count):
        shift = np.array(index.exponents[k], dtype=int)
        for gamma, coef in terms:
            cols[index.position(tuple((gamma + shift).tolist())), k] += coef
    return cols


def _equality_columns(h: Polynomial, index: MomentIndex, order: int) -> np.ndarray:
    """
    Columns coef(h * x^m) for every m with deg(h * x^m) <= 2d.
    """
    if half_degree(h) > order:
        raise DegreeError(f"equality of degree {h.degree} does not fit order {order}")
    return _multiples(h, index, 2 * order - h.degree, len(index))


def _face_basis(equalities: Sequence[Polynomial], index: MomentIndex, t: int) -> Optional[np.ndarray]:
    """
    Orthonormal basis of the complement of span{coef(h * x^beta) : deg <= t}
    in the monomial basis of degree t, or None when no multiple fits.
    """
    size = index.prefix(t)
    kernel = [_multiples(h, index, t - h.degree, size) for h in equalities]
    kernel = [K for K in kernel if K.shape[1]]
    if not kernel:
        return None
    return linalg.null_space(np.hstack(kernel).T, rcond=_RANK_TOL)


def _add_form(builder: SdpBuilder, form: LocalizingForm, label: str, basis: Optional[np.ndarray]) -> int:
    """
    Add L(y) or P^T L(y) P as a PSD block, or as an LP entry when it has side
    one. Returns the side of the block, 0 when the face is trivial.
    """
    if basis is None:
        if form.size == 1:
            col = builder.add_lp([0.0])
            builder.add_lp_coefficients(form.moments, np.full(form.moments.shape, col), -form.values)
        else:
            block = builder.add_psd_block(form.size, label)
            builder.add_psd_coefficients(block, form.moments, form.rows, form.cols, -form.values)
        return form.size

    side = basis.shape[1]
    if side == 0:
        logger.debug(f"Block {label} vanishes on the equality face")
        return 0
    rows, a_idx, b_idx, values = [], [], [], []
    upper = np.triu_indices(side)
    for k in np.unique(form.moments):
        reduced = basis.T @ form.coefficient_matrix(int(k)) @ basis
        entries = reduced[upper]
        keep = np.abs(entries) > _RANK_TOL * max(1.0, float(np.max(np.abs(entries))))
        rows.extend([int(k)] * int(np.sum(keep)))
        a_idx.extend(upper[0][keep].tolist())
        b_idx.extend(upper[1][keep].tolist())
        values.extend((-entries[keep]).tolist())
    if side == 1:
        col = builder.add_lp([0.0])
        builder.add_lp_coefficients(rows, np.full(len(rows), col), values)
    else:
        block = builder.add_psd_block(side, label)
        builder.add_psd_coefficients(block, rows, a_idx, b_idx, values)
    return side


def _independent_columns(H: np.ndarray) -> np.ndarray:
    if H.shape[1] == 0:
        return H
    _, R, perm = linalg.qr(H, mode="economic", pivoting=True)
    diag = np.abs(np.diag(R))
    if diag.size == 0 or diag[0] == 0.0:
        return H[:, :0]
    rank = int(np.sum(diag > _RANK_TOL * diag[0]))
    return H[:, np.sort(perm[:rank])]


def build_relaxation(
    objective: Polynomial,
    constraints: Sequence[Constraint],
    order: int,
    variables: Optional[Sequence[Variable]] = None,
) -> MomentRelaxation:
    """
    Assemble the order-d moment relaxation as an SdpProblem.

    Args:
        objective: f
        constraints: Inequalities g >= 0 and equalities h == 0
        order: Relaxation order d >= d_0
        variables: Variables of the moment sequence, defaults to the full
            layout of f

    Returns:
        MomentRelaxation

    Raises:
        DegreeError: If order < d_0
    """
    d0 = min_order(objective, constraints)
    if order < d0:
        raise DegreeError(f"relaxation order {order} is below the minimal order {d0}")
    variables = tuple(variables) if variables is not None else objective.layout.variables
    index = MomentIndex(variables, 2 * order)
    f = index.coefficients(objective)

    builder = SdpBuilder(len(index))
    builder.set_rhs(-f)

    equalities = [c.poly for c in constraints if c.is_equality]
    equality_cols = [_equality_columns(h, index, order) for h in equalities]

    one = Polynomial.constant(1.0, objective.layout)
    moment_form = localizing(one, order, variables)
    face_dims = [_add_form(builder, moment_form, "moment", _face_basis(equalities, index, order))]

    forms: List[LocalizingForm] = []
    for j, constraint in enumerate(constraints, start=1):
        if constraint.is_equality:
            continue
        form = localizing(constraint.poly, order, variables)
        forms.append(form)
        basis = _face_basis(equalities, index, form.t) if form.size > 1 else None
        face_dims.append(_add_form(builder, form, f"g{j}", basis))

    e0 = np.zeros(len(index))
    e0[0] = 1.0
    H = np.hstack(equality_cols) if equality_cols else np.zeros((len(index), 0))
    H = _independent_columns(H)
    trivially_infeasible = False
    if H.shape[1]:
        coef, *_ = linalg.lstsq(H, e0)
        if np.linalg.norm(H @ coef - e0) <= 1e-9:
            trivially_infeasible = True
            logger.debug("Equalities force y_0 = 0; relaxation is infeasible")

    builder.add_free(e0, 1.0)
    for k in range(H.shape[1]):
        builder.add_free(H[:, k], 0.0)

    relaxation = MomentRelaxation(
        sdp=builder.build(), index=index, order=order, objective=f, moment_form=moment_form,
        forms=forms, equality_rows=H.shape[1], trivially_infeasible=trivially_infeasible,
        face_dims=face_dims,
    )
    logger.debug(f"Order {order} relaxation: {relaxation.sdp.describe()}")
    return relaxation
