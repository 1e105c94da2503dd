#!/usr/bin/env python3
# -*- coding: utf-8 -*-

"""
GNEPP instance representation: per-player objectives and constraints over a
shared block layout, plus the feasibility check of a joint strategy.
"""

import enum
from dataclasses import dataclass, field
from typing import List, Sequence, Tuple

import numpy as np

from exceptions import InputError
from poly_core import BlockLayout, PointLike, Polynomial

# Default tolerance for declaring a point feasible
DEFAULT_FEASTOL = 1e-8


class Relation(str, enum.Enum):
    """Constraint relation against zero."""

    GEQ = ">="
    EQ = "=="


@dataclass(frozen=True)
class Constraint:
    """
    One constraint g >= 0 or g == 0.

    Args:
        poly: Constraint polynomial g
        relation: Relation against zero
    """

    poly: Polynomial
    relation: Relation = Relation.GEQ

    @property
    def is_equality(self) -> bool:
        return self.relation == Relation.EQ

    def violation(self, value: float) -> float:
        """
        Amount by which a constraint value is infeasible (0 when satisfied).
        """
        if self.is_equality:
            return abs(value)
        return max(0.0, -value)

    def to_text(self) -> str:
        return f"{self.poly.to_text()} {self.relation.value} 0"


@dataclass(frozen=True)
class PlayerProblem:
    """
    Player i's problem: min f_i s.t. g_{i,j} (>= or ==) 0.

    Args:
        objective: Objective polynomial f_i
        constraints: Ordered constraints of the player
    """

    objective: Polynomial
    constraints: Tuple[Constraint, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "constraints", tuple(self.constraints))

    @property
    def n_constraints(self) -> int:
        return len(self.constraints)

    @property
    def degree(self) -> int:
        """
        Largest degree among objective and constraints.
        """
        return max([self.objective.degree] + [c.poly.degree for c in self.constraints])


@dataclass(frozen=True)
class GneppInstance:
    """
    A generalized Nash equilibrium problem of polynomials.

    Args:
        layout: Block layout of x = (x_1, ..., x_N)
        players: One PlayerProblem per block, in player order
        name: Display name
    """

    layout: BlockLayout
    players: Tuple[PlayerProblem, ...]
    name: str = "problem"

    def __post_init__(self):
        players = tuple(self.players)
        object.__setattr__(self, "players", players)
        if len(players) != self.layout.n_players:
            raise InputError(f"instance has {len(players)} player problems but {self.layout.n_players} blocks")
        for i, problem in enumerate(players, start=1):
            polys = [problem.objective] + [c.poly for c in problem.constraints]
            for poly in polys:
                if poly.layout != self.layout:
                    raise InputError(f"player {i} uses a polynomial from a different layout")

    @property
    def n_players(self) -> int:
        return self.layout.n_players

    def player(self, i: int) -> PlayerProblem:
        if not 1 <= i <= self.n_players:
            raise InputError(f"player {i} out of range 1..{self.n_players}")
        return self.players[i - 1]

    @property
    def degree(self) -> int:
        return max(p.degree for p in self.players)

    def summary(self) -> str:
        counts = ", ".join(str(p.n_constraints) for p in self.players)
        return f"{self.name}: N={self.n_players}, dims={self.layout.dims}, constraints per player=({counts})"


@dataclass
class FeasibilityReport:
    """
    Constraint values of every player at a joint point.

    Attributes:
        values: values[i-1][j-1] = g_{i,j}(x)
        violations: matching infeasibility amounts
        feastol: Tolerance used for the verdict
    """

    values: List[List[float]] = field(default_factory=list)
    violations: List[List[float]] = field(default_factory=list)
    feastol: float = DEFAULT_FEASTOL

    @property
    def max_violation(self) -> float:
        return max((v for row in self.violations for v in row), default=0.0)

    @property
    def feasible(self) -> bool:
        return self.max_violation <= self.feastol

    def flat_values(self) -> Tuple[float, ...]:
        return tuple(v for row in self.values for v in row)

    def player_feasible(self, i: int) -> bool:
        return max(self.violations[i - 1], default=0.0) <= self.feastol


def feasibility_residual(
    inst: GneppInstance, point: PointLike, feastol: float = DEFAULT_FEASTOL
) -> FeasibilityReport:
    """
    Evaluate every constraint of every player at a full point.

    Args:
        inst: The instance
        point: Full point of dimension n
        feastol: Feasibility tolerance

    Returns:
        FeasibilityReport with per-constraint values

    Raises:
        InputError: On dimension mismatch
    """
    vector = inst.layout.vector(point)
    report = FeasibilityReport(feastol=feastol)
    for problem in inst.players:
        row_values: List[float] = []
        row_viol: List[float] = []
        for constraint in problem.constraints:
            value = constraint.poly.eval(vector)
            row_values.append(value)
            row_viol.append(constraint.violation(value))
        report.values.append(row_values)
        report.violations.append(row_viol)
    return report


def objective_values(inst: GneppInstance, point: PointLike) -> np.ndarray:
    """
    f_i(x) for every player.
    """
    vector = inst.layout.vector(point)
    return np.array([p.objective.eval(vector) for p in inst.players])


def constraint_list(problem: PlayerProblem) -> List[Tuple[Polynomial, Relation]]:
    return [(c.poly, c.relation) for c in problem.constraints]


def make_constraints(items: Sequence[Tuple[Polynomial, Relation]]) -> Tuple[Constraint, ...]:
    return tuple(Constraint(poly, relation) for poly, relation in items)
