#!/usr/bin/env python3
# -*- coding: utf-8 -*-

"""
Parametric instance generators: the environmental pollution model, the
internet switching model with its lifted rate variables, and random GNEPPs
with a joint simplex or ball constraint.
"""

from typing import List, Optional, Sequence, Tuple

import numpy as np

from exceptions import InputError
from instance_model.instance import Constraint, GneppInstance, PlayerProblem, Relation
from poly_core import BlockLayout, Polynomial, exponent_basis, poly_sum

POLLUTION_B = (2.0, 2.0)
POLLUTION_E = (1.0, 1.0)
# gamma[i][j] is the reduction rate of an investment from country i+1 into j+1
POLLUTION_GAMMA = ((0.7, 0.9), (0.8, 0.8))

INTERNET_VARIANTS = ("plain", "a1", "a1-neg")
RANDOM_CONSTRAINTS = ("simplex", "ball")


def pollution_model(
    b: Sequence[float] = POLLUTION_B,
    emission_caps: Sequence[float] = POLLUTION_E,
    gamma: Sequence[Sequence[float]] = POLLUTION_GAMMA,
    name: str = "pollution",
) -> GneppInstance:
    """
    Environmental pollution control game with N countries.

    Country i controls x_i = (x_{i,0}, ..., x_{i,N}): its gross emission
    x_{i,0} (block coordinate 1) and its investments x_{i,j} into country j
    (block coordinate j+1). The damage product is expanded at construction.

    Args:
        b: Revenue parameters b_i
        emission_caps: Accounted-for emission caps E_i
        gamma: Emission reduction rates, gamma[i][j] for investor i, host j
        name: Instance name

    Returns:
        GneppInstance with N blocks of dimension N+1
    """
    n = len(b)
    if n < 1 or len(emission_caps) != n or len(gamma) != n or any(len(row) != n for row in gamma):
        raise InputError("pollution model needs b, E of length N and an N x N gamma")
    layout = BlockLayout.from_dims([n + 1] * n)

    def x(i: int, j: int) -> Polynomial:
        return Polynomial.variable(layout, i, j + 1)

    def net_emission(k: int) -> Polynomial:
        return x(k, 0) - poly_sum((x(j, k) * gamma[j - 1][k - 1] for j in range(1, n + 1)), layout)

    damage = Polynomial.constant(2.0, layout)
    for k in range(1, n + 1):
        damage = damage * net_emission(k)

    players: List[PlayerProblem] = []
    for i in range(1, n + 1):
        revenue = x(i, 0) * (float(b[i - 1]) - x(i, 0) * 0.5)
        investments = poly_sum((x(i, j) for j in range(1, n + 1)), layout)
        objective = -revenue + investments + net_emission(i) + damage

        constraints = [Constraint(x(i, j)) for j in range(0, n + 1)]
        accounted = x(i, 0) - poly_sum((x(i, j) * gamma[i - 1][j - 1] for j in range(1, n + 1)), layout)
        constraints.append(Constraint(float(emission_caps[i - 1]) - accounted))
        constraints.extend(Constraint(net_emission(k)) for k in range(1, n + 1))
        players.append(PlayerProblem(objective, tuple(constraints)))
    return GneppInstance(layout, tuple(players), name)


def internet_switching(
    n_players: int = 10, capacity: float = 1.0, variant: str = "plain", name: Optional[str] = None
) -> GneppInstance:
    """
    Internet switching model with drop-tail buffer, lifted to polynomials.

    Player i controls (x_i, y_i) where y_i stands for 1 / (x_1 + ... + x_N)
    through the equality (x_1 + ... + x_N) y_i = 1.

    Args:
        n_players: Number of users N
        capacity: Buffer capacity B
        variant: "plain", "a1" (player 1 boxed to [0.3, 0.5], others
            x_i >= 0.001) or "a1-neg" (a1 with the objective sign flipped)
        name: Instance name, defaults to the variant

    Returns:
        GneppInstance with N blocks of dimension 2
    """
    if variant not in INTERNET_VARIANTS:
        raise InputError(f"unknown internet switching variant '{variant}', expected one of {INTERNET_VARIANTS}")
    if n_players < 1 or capacity <= 0:
        raise InputError("internet switching needs N >= 1 and B > 0")
    layout = BlockLayout.from_dims([2] * n_players)
    xs = [Polynomial.variable(layout, i, 1) for i in range(1, n_players + 1)]
    ys = [Polynomial.variable(layout, i, 2) for i in range(1, n_players + 1)]
    total = poly_sum(xs, layout)
    congestion = 1.0 - total * (1.0 / capacity)
    sign = 1.0 if variant == "a1-neg" else -1.0

    players: List[PlayerProblem] = []
    for i in range(n_players):
        objective = xs[i] * ys[i] * congestion * sign
        lifting = Constraint(total * ys[i] - 1.0, Relation.EQ)
        if variant == "plain":
            constraints = [Constraint(xs[i]), Constraint(capacity - total), lifting]
        elif i == 0:
            constraints = [Constraint(xs[i] - 0.3), Constraint(0.5 - xs[i]), lifting]
        else:
            constraints = [Constraint(capacity - total), Constraint(xs[i] - 0.001), lifting]
        players.append(PlayerProblem(objective, tuple(constraints)))
    label = name or ("internet" if variant == "plain" else f"internet-{variant}")
    return GneppInstance(layout, tuple(players), label)


def internet_start(n_players: int = 10, first: float = 0.4, others: float = 0.01) -> np.ndarray:
    """
    Starting point with x_1 = first, x_i = others and every y_i = 1 / sum(x),
    laid out block by block as (x_1, y_1, x_2, y_2, ...).
    """
    xs = np.array([first] + [others] * (n_players - 1))
    y = 1.0 / xs.sum()
    return np.column_stack([xs, np.full(n_players, y)]).reshape(-1)


def random_instance(
    n_players: int, dims: Sequence[int], degree: int, constraint: str = "simplex", seed: int = 0
) -> GneppInstance:
    """
    Random GNEPP with dense objectives and a joint simplex or ball constraint.

    Objective coefficients are i.i.d. uniform on [-1, 1] over every monomial
    of degree <= d in all n variables, then scaled so the largest magnitude
    is 1. Each call owns its generator; the same seed gives the same instance.

    Args:
        n_players: Number of players N (>= 2)
        dims: Block dimensions n_i
        degree: Objective degree d (>= 1)
        constraint: "simplex" (x >= 0, sum x = 1) or "ball" (||x||^2 <= 1)
        seed: Random seed

    Returns:
        GneppInstance named after its parameters
    """
    dims = [int(n) for n in dims]
    if n_players < 2 or len(dims) != n_players:
        raise InputError(f"random instances need N >= 2 and one dimension per player, got N={n_players}, dims={dims}")
    if any(n < 1 for n in dims) or degree < 1:
        raise InputError("random instances need positive dimensions and degree >= 1")
    if constraint not in RANDOM_CONSTRAINTS:
        raise InputError(f"unknown random constraint '{constraint}', expected one of {RANDOM_CONSTRAINTS}")

    layout = BlockLayout.from_dims(dims)
    variables = layout.variables
    exponents = exponent_basis(len(variables), degree)
    rng = np.random.default_rng(seed)

    xs = [Polynomial.variable(layout, i, j) for i, j in variables]
    if constraint == "simplex":
        shared = [Constraint(v) for v in xs]
        shared.append(Constraint(poly_sum(xs, layout) - 1.0, Relation.EQ))
    else:
        shared = [Constraint(1.0 - poly_sum((v * v for v in xs), layout))]

    players: List[PlayerProblem] = []
    for _ in range(n_players):
        coeffs = rng.uniform(-1.0, 1.0, size=len(exponents))
        coeffs /= np.max(np.abs(coeffs))
        objective = Polynomial.from_exponent_dict(dict(zip(exponents, coeffs)), variables, layout)
        players.append(PlayerProblem(objective, tuple(shared)))

    dims_label = ",".join(str(n) for n in dims)
    name = f"random-{constraint}-N{n_players}-({dims_label})-d{degree}-s{seed}"
    return GneppInstance(layout, tuple(players), name)


def random_start(inst: GneppInstance, constraint: str) -> np.ndarray:
    """
    Feasible start for a random instance: the simplex barycenter or the origin.
    """
    n = inst.layout.total_dim
    if constraint == "simplex":
        return np.full(n, 1.0 / n)
    return np.zeros(n)


def pollution_start(n_players: int = 2, value: float = 0.5) -> np.ndarray:
    return np.full(n_players * (n_players + 1), value)


def parse_dims(text: str) -> Tuple[int, ...]:
    """
    Parse a dimension list like "2,2,2" or "(4,3)".
    """
    cleaned = text.strip().strip("()[] ")
    try:
        dims = tuple(int(part) for part in cleaned.split(",") if part.strip())
    except ValueError:
        raise InputError(f"cannot read block dimensions from '{text}'") from None
    if not dims:
        raise InputError(f"cannot read block dimensions from '{text}'")
    return dims
