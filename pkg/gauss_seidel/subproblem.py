#!/usr/bin/env python3
# -*- coding: utf-8 -*-

"""
Restriction of one player's problem to its own block.
"""

from typing import List, Optional, Sequence, Tuple

import numpy as np

from exceptions import InputError
from instance_model import Constraint, GneppInstance
from poly_core import Polynomial, squared_distance


def restricted_constraints(inst: GneppInstance, i: int, point: np.ndarray) -> List[Constraint]:
    """
    Player i's constraints with x_{-i} fixed at `point`.

    Non-constant constraints are divided by their largest non-constant
    coefficient magnitude; constant ones are passed through unchanged.
    """
    out: List[Constraint] = []
    for c in inst.player(i).constraints:
        poly = c.poly.restrict(i, point)
        scale = poly.max_abs_coefficient(skip_constant=True)
        if scale > 0:
            poly = poly.scale(1.0 / scale)
        out.append(Constraint(poly, c.relation))
    return out


def ball_constraint(inst: GneppInstance, i: int, radius: float) -> Constraint:
    """
    R - ||x_i||^2 >= 0 over block i.

    Raises:
        InputError: If radius is not positive
    """
    if not radius > 0:
        raise InputError(f"ball radius must be positive, got {radius}")
    origin = np.zeros(inst.layout.dim(i))
    return Constraint(float(radius) - squared_distance(inst.layout, i, origin))


def player_subproblem(
    inst: GneppInstance, i: int, point: np.ndarray, tau: float = 0.0, center: Optional[Sequence[float]] = None,
    ball_radius: Optional[float] = None,
) -> Tuple[Polynomial, List[Constraint]]:
    """
    The proximal subproblem of player i at a joint point.

    Args:
        inst: Instance
        i: Player index
        point: Current joint point; its blocks other than i are fixed
        tau: Proximal weight
        center: Prox center x_i^(k), defaults to block i of `point`
        ball_radius: R of an extra constraint R - ||x_i||^2 >= 0, None for none

    Returns:
        (objective, constraints) over block i
    """
    layout = inst.layout
    objective = inst.player(i).objective.restrict(i, point)
    if tau > 0:
        if center is None:
            center = np.asarray(point, dtype=float)[layout.block_slice(i)]
        objective = objective + squared_distance(layout, i, center).scale(tau)
    constraints = restricted_constraints(inst, i, point)
    if ball_radius is not None:
        constraints.append(ball_constraint(inst, i, ball_radius))
    return objective, constraints
