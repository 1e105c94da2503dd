#!/usr/bin/env python3
# -*- coding: utf-8 -*-

"""
Polynomial core package: block layouts, monomials, sparse polynomials and
graded monomial bases.
"""

from poly_core.layout import BlockLayout, Variable, PointLike
from poly_core.monomial import Monomial, basis, monomial_basis, exponent_basis
from poly_core.polynomial import (
    COEFF_EPS,
    Polynomial,
    poly_sum,
    squared_distance,
    variables_polys,
)


def evaluate(p: Polynomial, point: PointLike) -> float:
    """Evaluate p at a full assignment."""
    return p.eval(point)


def restrict(p: Polynomial, player: int, fixed: PointLike) -> Polynomial:
    """Fix every block except `player`."""
    return p.restrict(player, fixed)


def add(p: Polynomial, q) -> Polynomial:
    return p + q


def sub(p: Polynomial, q) -> Polynomial:
    return p - q


def mul(p: Polynomial, q) -> Polynomial:
    return p * q


def scale(p: Polynomial, c: float) -> Polynomial:
    return p.scale(c)


__all__ = [
    'BlockLayout',
    'Variable',
    'PointLike',
    'Monomial',
    'Polynomial',
    'COEFF_EPS',
    'basis',
    'monomial_basis',
    'exponent_basis',
    'evaluate',
    'restrict',
    'add',
    'sub',
    'mul',
    'scale',
    'poly_sum',
    'squared_distance',
    'variables_polys',
]
