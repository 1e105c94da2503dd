#!/usr/bin/env python3
# -*- coding: utf-8 -*-

"""
Objective differences and the defining tuples of the sets K_i.

Player i's copy y_i lives in an extra block N+1 of the layout, so every
polynomial of this module is over (x_1, ..., x_N, y_i).
"""

from dataclasses import dataclass
from typing import Dict, List, Tuple

from instance_model import GneppInstance
from poly_core import BlockLayout, Polynomial, Variable


def copy_layout(inst: GneppInstance, i: int) -> BlockLayout:
    return inst.layout.with_copy_block(i)


def copy_mapping(inst: GneppInstance, i: int) -> Dict[Variable, Variable]:
    """x_{i,j} -> y_{i,j}, with y_i stored as block N+1."""
    target = inst.n_players + 1
    return {(i, j): (target, j) for j in range(1, inst.layout.dim(i) + 1)}


def lift(poly: Polynomial, inst: GneppInstance, i: int) -> Polynomial:
    """The same polynomial viewed over (x, y_i)."""
    return poly.relayout(copy_layout(inst, i))


def to_copy(poly: Polynomial, inst: GneppInstance, i: int) -> Polynomial:
    """poly with x_i replaced by y_i, over (x, y_i)."""
    return poly.rename(copy_mapping(inst, i), copy_layout(inst, i))


def delta_f(inst: GneppInstance, i: int) -> Polynomial:
    """
    f_i(y_i, x_{-i}) - f_i(x_i, x_{-i}).
    """
    f = inst.player(i).objective
    return to_copy(f, inst, i) - lift(f, inst, i)


def delta_p(poly: Polynomial, inst: GneppInstance, i: int) -> Polynomial:
    """P(y_i, x_{-i}) - P(x) for a polynomial P over x."""
    return to_copy(poly, inst, i) - lift(poly, inst, i)


@dataclass(frozen=True)
class KiTuple:
    """
    Polynomials h_{i,0} = 1, h_{i,1}, ..., h_{i,m_i} with
    K_i = {(x, y_i): h_{i,t} >= 0}.

    Attributes:
        player: Player index i
        layout: Layout over (x, y_i)
        polys: h_{i,0}, ..., h_{i,m_i}; Delta f_i is last
        labels: Origin of each entry
        has_equalities: Some constraint of player i is an equality
    """

    player: int
    layout: BlockLayout
    polys: Tuple[Polynomial, ...]
    labels: Tuple[str, ...]
    has_equalities: bool = False

    @property
    def m(self) -> int:
        """m_i, not counting h_{i,0}."""
        return len(self.polys) - 1

    @property
    def variables(self) -> Tuple[Variable, ...]:
        return self.layout.variables


def build_ki(inst: GneppInstance, i: int) -> KiTuple:
    """
    Defining tuple of K_i: every constraint of player i at x, the same
    constraints at (y_i, x_{-i}), and Delta f_i >= 0. Equalities enter as
    the two inequalities h >= 0 and -h >= 0.
    """
    layout = copy_layout(inst, i)
    constraints = inst.player(i).constraints
    polys: List[Polynomial] = [Polynomial.constant(1.0, layout)]
    labels: List[str] = ["1"]
    for copy, tag in ((False, "x"), (True, "y")):
        for j, c in enumerate(constraints, start=1):
            h = to_copy(c.poly, inst, i) if copy else lift(c.poly, inst, i)
            if c.is_equality:
                polys.extend([h, -h])
                labels.extend([f"g{j}({tag})", f"-g{j}({tag})"])
            else:
                polys.append(h)
                labels.append(f"g{j}({tag})")
    polys.append(delta_f(inst, i))
    labels.append("df")
    return KiTuple(player=i, layout=layout, polys=tuple(polys), labels=tuple(labels),
                   has_equalities=any(c.is_equality for c in constraints))
