#!/usr/bin/env python3
# -*- coding: utf-8 -*-

"""
Tests of moment sequences, localizing matrices and relaxation assembly.
"""

import numpy as np
import pytest

from exceptions import DegreeError, InputError
from instance_model import Constraint, Relation
from moment_relax import (
    MomentIndex,
    Tms,
    basis_size,
    build_relaxation,
    constraint_order,
    half_degree,
    localizing,
    min_order,
    pair,
)
from poly_core import BlockLayout, Polynomial
from sdp_solver import solve


@pytest.fixture
def plane():
    """One player with x in R^2."""
    layout = BlockLayout.from_dims([2])
    x1 = Polynomial.variable(layout, 1, 1)
    x2 = Polynomial.variable(layout, 1, 2)
    return layout, x1, x2


@pytest.fixture
def line():
    layout = BlockLayout.from_dims([1])
    return layout, Polynomial.variable(layout, 1, 1)


@pytest.mark.parametrize("n, degree, expected", [(1, 2, 3), (2, 2, 6), (2, 4, 15), (3, 4, 35)])
def test_basis_size(n, degree, expected):
    assert basis_size(n, degree) == expected


def test_moment_index_positions(plane):
    """Test graded positions, prefixes and coefficient vectors"""
    layout, x1, x2 = plane
    index = MomentIndex(layout.variables, 2)
    assert len(index) == 6
    assert index.prefix(1) == 3
    assert index.prefix(5) == 6
    assert index.position((1, 1)) == 4
    assert index.monomial(2).to_text() == "x1_2"

    np.testing.assert_allclose(index.coefficients(3.0 * x1 * x2 - x2 + 2.0), [2.0, 0.0, -1.0, 0.0, 3.0, 0.0])
    with pytest.raises(DegreeError):
        index.coefficients(x1 ** 3)
    with pytest.raises(DegreeError):
        index.position((3, 0))
    with pytest.raises(DegreeError):
        MomentIndex(layout.variables, -1)


def test_point_mass_moment_matrix(plane):
    """Test M_t[y] = [u]_t [u]_t^T for the Dirac measure at u"""
    layout, _, _ = plane
    u = [2.0, -1.0]
    y = Tms.point_mass(u, layout.variables, 4)
    assert len(y) == 15
    assert y[(2, 1)] == pytest.approx(-4.0)

    v = y.index.monomial_vector(u, 2)
    M = y.moment_matrix(2)
    np.testing.assert_allclose(M, np.outer(v, v))
    assert np.linalg.matrix_rank(M) == 1
    np.testing.assert_allclose(y.first_moments(), u)

    with pytest.raises(DegreeError):
        y.moment_matrix(3)


def test_pairing_is_evaluation_for_point_mass(plane):
    """Test <f, [u]_2d> = f(u)"""
    layout, x1, x2 = plane
    f = x1 ** 2 * x2 - 3.0 * x2 + 1.0
    y = Tms.point_mass([1.5, 2.0], layout.variables, 4)
    assert pair(f, y) == pytest.approx(f.eval([1.5, 2.0]))
    assert y.pair(f) == pytest.approx(4.5 - 6.0 + 1.0)

    with pytest.raises(DegreeError):
        y.pair(x1 ** 5)


def test_truncate_and_mixture(line):
    """Test prefix truncation and the moments of a two-atom measure"""
    layout, _ = line
    y = Tms.mixture([[1.0], [-1.0]], [0.5, 0.5], layout.variables, 4)
    np.testing.assert_allclose(y.values, [1.0, 0.0, 1.0, 0.0, 1.0])
    short = y.truncate(2)
    assert short.degree == 2
    np.testing.assert_allclose(short.values, [1.0, 0.0, 1.0])
    assert np.linalg.matrix_rank(y.moment_matrix(2)) == 2

    with pytest.raises(DegreeError):
        y.truncate(6)
    with pytest.raises(InputError):
        Tms(y.index, [1.0, 2.0])


def test_localizing_matrix_at_point_mass(plane):
    """Test L_q[y] = q(u) [u]_t [u]_t^T with t = d - ceil(deg q / 2)"""
    layout, x1, x2 = plane
    q = 1.0 - x1 ** 2 - x2 ** 2
    u = [2.0, 1.0]
    form = localizing(q, 2, layout.variables)
    assert form.t == 1
    assert form.size == 3
    assert half_degree(q) == 1

    y = Tms.point_mass(u, layout.variables, 4)
    v = y.index.monomial_vector(u, 1)
    np.testing.assert_allclose(form.assemble(y), q.eval(u) * np.outer(v, v))
    np.testing.assert_allclose(form.assemble(y.values), form.assemble(y))


def test_localizing_coefficient_matrices(line):
    """Test that L_q[y] = sum_k y_k Q_k"""
    layout, x = line
    q = x - 1.0
    form = localizing(q, 2, layout.variables)
    y = Tms.mixture([[0.5], [3.0]], [0.25, 0.75], layout.variables, 4)
    total = sum(y.values[k] * form.coefficient_matrix(k) for k in range(len(y)))
    np.testing.assert_allclose(total, form.assemble(y))
    assert sorted(form.entry_terms(1, 0)) == [(1, -1.0), (2, 1.0)]


def test_moment_matrix_is_unit_localizer(plane):
    """Test that q = 1 gives the moment matrix"""
    layout, _, _ = plane
    y = Tms.point_mass([0.3, -0.7], layout.variables, 4)
    one = Polynomial.constant(1.0, layout)
    np.testing.assert_allclose(localizing(one, 2).assemble(y), y.moment_matrix(2))


def test_localizing_rejects_low_order(line):
    layout, x = line
    with pytest.raises(DegreeError):
        localizing(x ** 5, 2)


def test_relaxation_orders(plane):
    """Test d_0 and d_1"""
    _, x1, x2 = plane
    constraints = [Constraint(x1 ** 3 - x2), Constraint(x2, Relation.EQ)]
    assert min_order(x1 ** 4, constraints) == 2
    assert min_order(x1, []) == 1
    assert constraint_order(constraints) == 2
    assert constraint_order([]) == 1


def test_relaxation_structure(line):
    """Test the blocks of min x s.t. x - 1 >= 0 at order 1"""
    layout, x = line
    relaxation = build_relaxation(x, [Constraint(x - 1.0)], 1)
    sdp = relaxation.sdp
    assert sdp.m == 3
    assert sdp.psd_sizes == (2,)
    assert sdp.n_lp == 1
    assert sdp.n_free == 1
    assert relaxation.equality_rows == 0
    assert not relaxation.trivially_infeasible

    with pytest.raises(DegreeError):
        build_relaxation(x ** 4, [], 1)


def test_relaxation_solves_to_bound(line):
    """Test theta_1 = 1 for min x s.t. x >= 1 and the recovered moments"""
    _, x = line
    relaxation = build_relaxation(x, [Constraint(x - 1.0)], 1)
    solution = solve(relaxation.sdp)
    assert solution.is_optimal
    y = relaxation.tms_from_solution(solution)
    assert y.values[0] == pytest.approx(1.0, abs=1e-7)
    assert relaxation.value(y) == pytest.approx(1.0, abs=1e-6)
    assert -solution.dual_objective == pytest.approx(1.0, abs=1e-6)


def test_relaxation_equalities(line):
    """Test equality columns and the detection of 1 == 0"""
    layout, x = line
    relaxation = build_relaxation(x, [Constraint(x ** 2 - 1.0, Relation.EQ)], 2)
    # h * x^m for deg m <= 2, one row per multiple
    assert relaxation.equality_rows == 3
    assert relaxation.sdp.n_free == 4

    contradiction = build_relaxation(x, [Constraint(Polynomial.constant(1.0, layout), Relation.EQ)], 1)
    assert contradiction.trivially_infeasible


def test_equalities_restrict_the_moment_block(plane):
    """
    Test min x1 s.t. x >= 0, x1 + x2 = 1 at order 1: M_1 is restricted to the
    complement of coef(x1 + x2 - 1), so the block has side 2
    """
    _, x1, x2 = plane
    constraints = [Constraint(x1), Constraint(x2), Constraint(x1 + x2 - 1.0, Relation.EQ)]
    relaxation = build_relaxation(x1, constraints, 1)
    assert relaxation.sdp.psd_sizes == (2,)
    assert relaxation.face_dims == [2, 1, 1]
    assert relaxation.equality_rows == 3

    solution = solve(relaxation.sdp)
    assert solution.is_optimal
    y = relaxation.tms_from_solution(solution)
    assert relaxation.value(y) == pytest.approx(0.0, abs=1e-6)
    np.testing.assert_allclose(y.values[:3], [1.0, 0.0, 1.0], atol=1e-6)


def test_restricted_block_vanishes_on_a_point(line):
    """Test that x == 2 leaves a moment face of side 1 at every order"""
    _, x = line
    relaxation = build_relaxation(x ** 2, [Constraint(x - 2.0, Relation.EQ)], 2)
    assert relaxation.face_dims == [1]
    assert relaxation.sdp.psd_sizes == ()
    solution = solve(relaxation.sdp)
    assert solution.is_optimal
    assert relaxation.value(relaxation.tms_from_solution(solution)) == pytest.approx(4.0, abs=1e-6)
