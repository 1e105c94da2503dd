#!/usr/bin/env python3
# -*- coding: utf-8 -*-

"""
Tests of the exact one-dimensional minimizer.
"""

import numpy as np
import pytest

from instance_model import Constraint, Relation
from poly_core import BlockLayout, Polynomial
from pop_hierarchy.univariate import UnivariateStatus, minimize_univariate, real_roots, to_univariate


@pytest.fixture
def line():
    layout = BlockLayout.from_dims([1])
    x = Polynomial.variable(layout, 1, 1)
    return layout.variables[0], x


def test_real_roots(line):
    """Test that complex pairs are dropped and double roots kept"""
    var, x = line
    np.testing.assert_allclose(real_roots(to_univariate((x - 1.0) * (x ** 2 + 1.0), var)), [1.0])
    double = real_roots(to_univariate((x - 2.0) ** 2, var))
    assert double.size >= 1
    np.testing.assert_allclose(double, 2.0, atol=1e-6)
    assert real_roots(to_univariate(x * 0.0 + 3.0, var)).size == 0


def test_double_well_on_interval(line):
    """Test min (x^2 - 1)^2 + 0.1 x on [-2, 2]: the left well wins"""
    var, x = line
    f = (x ** 2 - 1.0) ** 2 + 0.1 * x
    result = minimize_univariate(f, [Constraint(4.0 - x ** 2)], var)
    assert result.status == UnivariateStatus.SOLVED
    assert len(result.points) == 1
    assert result.points[0] < -0.9
    assert result.value == pytest.approx(float(f.eval([result.points[0]])))


def test_endpoint_minimum(line):
    """Test min x on [1, 3]"""
    var, x = line
    result = minimize_univariate(x, [Constraint(x - 1.0), Constraint(3.0 - x)], var)
    assert result.points == [1.0]
    assert result.value == 1.0


def test_two_global_minimizers(line):
    """Test min -x^2 on [-1, 1]"""
    var, x = line
    result = minimize_univariate(-(x ** 2), [Constraint(1.0 - x ** 2)], var)
    np.testing.assert_allclose(result.points, [-1.0, 1.0])
    assert result.value == pytest.approx(-1.0)


def test_equality_keeps_only_roots(line):
    """Test min x s.t. x^2 == 2"""
    var, x = line
    result = minimize_univariate(x, [Constraint(x ** 2 - 2.0, Relation.EQ)], var)
    np.testing.assert_allclose(result.points, [-np.sqrt(2.0)])


def test_unbounded_and_infeasible(line):
    """Test the two failure outcomes"""
    var, x = line
    assert minimize_univariate(-x, [Constraint(x)], var).status == UnivariateStatus.UNBOUNDED
    assert minimize_univariate(x ** 3, [], var).status == UnivariateStatus.UNBOUNDED
    empty = [Constraint(x - 2.0), Constraint(1.0 - x)]
    assert minimize_univariate(x, empty, var).status == UnivariateStatus.INFEASIBLE


def test_unconstrained_quadratic(line):
    """Test min (x - 0.3)^2 over the line"""
    var, x = line
    result = minimize_univariate((x - 0.3) ** 2, [], var)
    np.testing.assert_allclose(result.points, [0.3])
    assert result.value == pytest.approx(0.0, abs=1e-15)
