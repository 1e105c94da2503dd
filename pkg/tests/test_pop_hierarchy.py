#!/usr/bin/env python3
# -*- coding: utf-8 -*-

"""
Tests of the moment hierarchy, flat truncation and minimizer extraction.
"""

import numpy as np
import pytest

from exceptions import DegreeError, SdpNumericalError
from instance_model import Constraint, Relation
from moment_relax import Tms, build_relaxation
from poly_core import BlockLayout, Polynomial
from pop_hierarchy import (
    CompiledPolynomial,
    MinimizerPolisher,
    PopResult,
    PopSolver,
    PopStatus,
    extract_minimizers,
    flat_truncation,
    numerical_rank,
    pop_minimize,
)
from sdp_solver import InteriorPointSolver, SdpStatus


@pytest.fixture
def line():
    layout = BlockLayout.from_dims([1])
    return layout, Polynomial.variable(layout, 1, 1)


@pytest.fixture
def plane():
    layout = BlockLayout.from_dims([2])
    return layout, Polynomial.variable(layout, 1, 1), Polynomial.variable(layout, 1, 2)


def _sorted_points(points):
    return sorted(tuple(np.round(u, 6)) for u in points)


def test_numerical_rank():
    """Test the relative singular value cutoff"""
    assert numerical_rank(np.diag([2.0, 1e-9, 0.5])) == 2
    assert numerical_rank(np.diag([1e-3, 1e-8])) == 1
    assert numerical_rank(np.zeros((0, 0))) == 0


def test_flat_truncation_of_atomic_measures(line):
    """Test rank conditions on one and three atoms"""
    layout, _ = line
    single = Tms.point_mass([0.7], layout.variables, 4)
    flat = flat_truncation(single, 1, 2)
    assert flat.holds
    assert flat.rank == 1

    three = Tms.mixture([[-1.0], [0.0], [2.0]], [0.2, 0.3, 0.5], layout.variables, 4)
    flat = flat_truncation(three, 1, 2)
    assert not flat.holds
    assert (flat.rank, flat.lower_rank) == (3, 2)

    with pytest.raises(DegreeError):
        flat_truncation(single, 2, 1)


def test_extract_two_atoms(plane):
    """Test recovery of the support of a two-atom measure in the plane"""
    layout, _, _ = plane
    atoms = [[1.0, 2.0], [-1.0, 0.5]]
    y = Tms.mixture(atoms, [0.4, 0.6], layout.variables, 4)
    flat = flat_truncation(y, 1, 2)
    assert flat.holds and flat.rank == 2

    extracted = extract_minimizers(y, 2, flat.rank)
    assert _sorted_points(extracted.points) == _sorted_points(atoms)
    np.testing.assert_allclose(sorted(extracted.weights), [0.4, 0.6], atol=1e-8)
    assert extracted.residual <= 1e-8


def test_minimize_on_half_line(line):
    """Test min x + 0.001 (x - 1)^2 s.t. x >= 1, exact at order 1"""
    _, x = line
    result = PopSolver().solve(x + 0.001 * (x - 1.0) ** 2, [Constraint(x - 1.0)])
    assert result.status == PopStatus.MINIMIZERS_EXTRACTED
    assert result.solved
    assert result.bound == pytest.approx(1.0, abs=1e-6)
    np.testing.assert_allclose(result.best_minimizer(), [1.0], atol=1e-8)
    assert result.order == 1
    assert result.residuals[0][0] <= 1e-8
    assert result.residuals[0][1] <= 1e-6


def test_linear_half_line_is_flat_at_order_two(plane):
    """
    Test min x1 + x2^2 s.t. x1 >= 1: the order-1 optimal face leaves the
    moment of x1^2 free, so M_1 is not flat and flatness first holds at
    order 2.
    """
    _, x1, x2 = plane
    result = PopSolver().solve(x1 + x2 ** 2, [Constraint(x1 - 1.0)])
    assert result.solved
    assert result.order == 2
    assert result.bound == pytest.approx(1.0, abs=1e-6)
    np.testing.assert_allclose(result.best_minimizer(), [1.0, 0.0], atol=1e-8)


def test_double_well_has_two_minimizers(line):
    """Test min (x^2 - 1)^2 with global minimizers -1 and 1"""
    _, x = line
    result = pop_minimize((x ** 2 - 1.0) ** 2)
    assert result.solved
    assert result.bound == pytest.approx(0.0, abs=1e-6)
    assert result.rank == 2
    assert _sorted_points([np.round(u, 4) for u in result.minimizers]) == [(-1.0,), (1.0,)]
    np.testing.assert_allclose(result.best_minimizer(reference=[0.9]), [1.0], atol=1e-4)


def test_infeasible_constraint(line):
    """Test the empty set x^2 + 1 <= 0"""
    _, x = line
    result = PopSolver().solve(x, [Constraint(-(x ** 2) - 1.0)])
    assert result.status == PopStatus.INFEASIBLE
    assert result.infeasible
    assert not result.minimizers


def test_violated_constant_constraint(line):
    layout, x = line
    result = PopSolver().solve(x, [Constraint(Polynomial.constant(-1.0, layout))])
    assert result.infeasible
    assert result.bounds == []


def test_univariate_grid_oracle(line):
    """Test the global minimum of a quartic on [-2, 2] against a fine grid"""
    _, x = line
    f = x ** 4 - 2.0 * x ** 3 - x ** 2 + x
    result = PopSolver().solve(f, [Constraint(4.0 - x ** 2)])
    assert result.solved

    grid = np.linspace(-2.0, 2.0, 40001).reshape(-1, 1)
    values = f.evaluate_batch(grid)
    best = float(values.min())
    assert result.bound == pytest.approx(best, abs=1e-6)
    np.testing.assert_allclose(result.best_minimizer(), grid[int(np.argmin(values))], atol=1e-3)


def test_bivariate_grid_oracle(plane):
    """Test a nonconvex cubic on the unit disk against a grid"""
    _, x1, x2 = plane
    f = x1 ** 3 + x2 ** 2 - x1 * x2
    disk = Constraint(1.0 - x1 ** 2 - x2 ** 2)
    result = PopSolver().solve(f, [disk])

    axis = np.linspace(-1.0, 1.0, 401)
    grid = np.array(np.meshgrid(axis, axis)).reshape(2, -1).T
    grid = grid[np.sum(grid ** 2, axis=1) <= 1.0]
    best = float(f.evaluate_batch(grid).min())

    # a valid lower bound, close to the sampled minimum
    assert result.bound <= best + 1e-6
    assert result.bound >= best - 2e-2
    assert all(b2 >= b1 - 1e-6 for b1, b2 in zip(result.bounds, result.bounds[1:]))
    if result.solved:
        u = result.best_minimizer()
        assert disk.poly.eval(u) >= -1e-5
        assert f.eval(u) == pytest.approx(result.bound, abs=1e-5)


def test_order_cap(line):
    """Test that the hierarchy stops at order_max"""
    _, x = line
    f, interval = -(x ** 2), [Constraint(1.0 - x ** 2)]
    result = pop_minimize(f, interval, opts={"order_extra": 0}, order_max=1)
    assert result.status == PopStatus.ORDER_CAP_REACHED
    assert result.order == 1
    assert len(result.bounds) == 1
    assert result.bound == pytest.approx(-1.0, abs=1e-6)

    result = pop_minimize(f, interval, opts={"order_max": 2})
    assert result.solved
    assert _sorted_points([np.round(u, 6) for u in result.minimizers]) == [(-1.0,), (1.0,)]


def test_bounds_increase_with_order(plane):
    """Test theta_d <= theta_{d+1} <= min f on a nonconvex quartic over the disk"""
    _, x1, x2 = plane
    f = x1 ** 4 - x1 ** 2 * x2 + x2 ** 3 - x1 * x2
    disk = Constraint(1.0 - x1 ** 2 - x2 ** 2)
    sdp = InteriorPointSolver()
    bounds = []
    for d in (2, 3, 4):
        relaxation = build_relaxation(f, [disk], d)
        solution = sdp.solve(relaxation.sdp)
        assert solution.is_optimal
        bounds.append(relaxation.value(relaxation.tms_from_solution(solution)))
    assert all(b2 >= b1 - 1e-6 for b1, b2 in zip(bounds, bounds[1:]))
    axis = np.linspace(-1.0, 1.0, 401)
    grid = np.array(np.meshgrid(axis, axis)).reshape(2, -1).T
    grid = grid[np.sum(grid ** 2, axis=1) <= 1.0]
    assert bounds[-1] <= float(f.evaluate_batch(grid).min()) + 1e-6


def test_failed_order_moves_to_the_next(line, monkeypatch):
    """Test that a relaxation stopping short of tol is skipped, not accepted"""
    _, x = line
    solver = PopSolver()
    real_solve = solver.sdp.solve
    calls = []

    def first_fails(problem):
        calls.append(problem)
        solution = real_solve(problem)
        if len(calls) == 1:
            solution.status = SdpStatus.NUMERICAL_FAILURE
        return solution

    monkeypatch.setattr(solver.sdp, "solve", first_fails)
    result = solver.solve(x + 0.001 * (x - 1.0) ** 2, [Constraint(x - 1.0)])
    assert result.solved
    assert result.order == 2
    assert len(result.bounds) == 1
    assert len(calls) == 2


def test_all_orders_failing_raises(plane):
    """Test that SdpNumericalError is raised only after the last order"""
    _, x1, x2 = plane
    solver = PopSolver({"order_extra": 1}, sdp_config={"max_iter": 2, "farkas": False})
    with pytest.raises(SdpNumericalError) as info:
        solver.solve(x1 ** 2 + x2 ** 2, [Constraint(x1 - 1.0)])
    assert info.value.order == 2
    assert "order 1: MaxIter" in str(info.value)
    assert "order 2: MaxIter" in str(info.value)


def test_polished_minimizer_is_on_the_constraint(plane):
    """Test that extracted atoms are refined to feastol on an equality"""
    _, x1, x2 = plane
    circle = Constraint(x1 ** 2 + x2 ** 2 - 1.0, Relation.EQ)
    result = PopSolver().solve(x1 + 2.0 * x2, [circle])
    assert result.solved
    u = result.best_minimizer()
    assert abs(circle.poly.eval(u)) <= 1e-8
    np.testing.assert_allclose(u, -np.array([1.0, 2.0]) / np.sqrt(5.0), atol=1e-8)
    assert result.bound == pytest.approx(-np.sqrt(5.0), abs=1e-6)


def test_compiled_polynomial_gradient(plane):
    """Test value and gradient of the dense evaluation form"""
    layout, x1, x2 = plane
    f = x1 ** 3 * x2 - 2.0 * x2 ** 2 + 5.0
    compiled = CompiledPolynomial(f, layout.variables)
    u = np.array([1.5, -0.5])
    assert compiled.value(u) == pytest.approx(f.eval(u))
    np.testing.assert_allclose(compiled.gradient(u), [3 * 1.5 ** 2 * -0.5, 1.5 ** 3 + 2.0], atol=1e-12)


def test_polisher_moves_a_perturbed_atom(line):
    """Test SLSQP refinement of an inexact atom of min x^2 s.t. x >= 1"""
    _, x = line
    polisher = MinimizerPolisher(x ** 2, [Constraint(x - 1.0)], x.layout.variables)
    polished = polisher.polish([1.0 - 3e-5])
    assert polished.violation <= 1e-10
    assert polished.point[0] == pytest.approx(1.0, abs=1e-9)
    assert polished.moved == pytest.approx(3e-5, rel=1e-3)


def test_best_minimizer_without_points():
    result = PopResult(status=PopStatus.BOUND_ONLY, bound=0.5)
    with pytest.raises(ValueError):
        result.best_minimizer()
    assert result.summary() == "BoundOnly at order 0, bound 0.5"


def test_one_dimensional_fallback_after_failed_orders(line):
    """Test that a one-variable problem is still solved when every relaxation stops early"""
    _, x = line
    solver = PopSolver({"order_extra": 1}, sdp_config={"max_iter": 2, "farkas": False})
    result = solver.solve(x + 0.001 * (x - 1.0) ** 2, [Constraint(x - 1.0)])
    assert result.solved
    assert result.bound == pytest.approx(1.0, abs=1e-12)
    np.testing.assert_allclose(result.best_minimizer(), [1.0], atol=1e-12)
    assert "one-dimensional" in result.message

    with pytest.raises(SdpNumericalError):
        PopSolver({"order_extra": 1, "univariate_fallback": False},
                  sdp_config={"max_iter": 2, "farkas": False}).solve(x, [Constraint(x - 1.0)])


def test_singleton_feasible_set(line):
    """
    Test min x - 3x^2 on {x >= 0.125, 0.125^3 - x^3 >= 0}: the feasible set
    is one point, which the relaxations cannot see from inside
    """
    _, x = line
    a = 0.125
    constraints = [Constraint(x - a), Constraint(a ** 3 - x ** 3)]
    result = PopSolver({"order_max": 3}).solve(x - 3.0 * x ** 2, constraints)
    assert result.solved
    np.testing.assert_allclose(result.best_minimizer(), [a], atol=1e-9)
    assert result.bound == pytest.approx(a - 3.0 * a ** 2, abs=1e-6)
