#!/usr/bin/env python3
# -*- coding: utf-8 -*-

"""
Tests of SDP assembly and the interior-point solver.
"""

import numpy as np
import pytest

from exceptions import InputError
from sdp_solver import InteriorPointSolver, SdpBuilder, SdpProblem, SdpStatus, solve
from sdp_solver.interior_point import _NumericalBreakdown, _restore_definiteness


def _lp(objective, rows, rhs):
    """Standard-form LP: min c^T x, A x = b, x >= 0."""
    rows = np.asarray(rows, dtype=float)
    builder = SdpBuilder(rows.shape[0])
    builder.add_lp(objective)
    r, c = np.nonzero(rows)
    builder.add_lp_coefficients(r, c, rows[r, c])
    builder.set_rhs(rhs)
    return builder.build()


def _trace_problem(C):
    """min <C, X> s.t. trace X = 1, X psd; the optimum is the smallest eigenvalue of C."""
    n = C.shape[0]
    builder = SdpBuilder(1)
    block = builder.add_psd_block(n, "X")
    builder.add_psd_coefficients(block, [0] * n, list(range(n)), list(range(n)), [1.0] * n)
    builder.set_psd_objective(block, C)
    builder.set_rhs([1.0])
    return builder.build()


def test_builder_mirrors_off_diagonal_entries():
    """Test that one (a, b) pair fills both symmetric entries"""
    builder = SdpBuilder(1)
    block = builder.add_psd_block(2)
    builder.add_psd_coefficients(block, [0], [0], [1], [0.5])
    problem = builder.build()
    np.testing.assert_allclose(problem.A_psd[0].toarray(), [[0.0, 0.5, 0.5, 0.0]])
    assert problem.describe() == "SDP m=1, psd blocks=[2], lp=0, free=0"


def test_builder_rejects_bad_shapes():
    """Test size checks of the builder and of SdpProblem"""
    builder = SdpBuilder(2)
    with pytest.raises(InputError):
        builder.add_psd_block(0)
    with pytest.raises(InputError):
        builder.set_rhs([1.0])
    with pytest.raises(InputError):
        builder.add_free([1.0, 2.0, 3.0])
    # no cone variables at all
    with pytest.raises(InputError):
        builder.build()

    block = builder.add_psd_block(2)
    builder.set_psd_objective(block, np.array([[1.0, 2.0], [0.0, 1.0]]))
    with pytest.raises(InputError, match="symmetric"):
        builder.build()


def test_linear_program_optimum():
    """Test min x1 + 2 x2 s.t. x1 + x2 = 1"""
    problem = _lp([1.0, 2.0], [[1.0, 1.0]], [1.0])
    sol = solve(problem)
    assert sol.status == SdpStatus.OPTIMAL
    assert sol.primal_objective == pytest.approx(1.0, abs=1e-7)
    assert sol.dual_objective == pytest.approx(1.0, abs=1e-7)
    np.testing.assert_allclose(sol.x_lp, [1.0, 0.0], atol=1e-6)
    np.testing.assert_allclose(sol.y, [1.0], atol=1e-6)
    assert sol.max_residual() <= 1e-8


@pytest.mark.parametrize("C, expected", [
    (np.array([[2.0, 1.0], [1.0, 2.0]]), 1.0),
    (np.diag([3.0, -1.0, 4.0]), -1.0),
    (np.array([[0.0, 1.0, 0.0], [1.0, 0.0, 1.0], [0.0, 1.0, 0.0]]), -np.sqrt(2.0)),
])
def test_smallest_eigenvalue_sdp(C, expected):
    """Test the trace-constrained SDP against numpy eigenvalues"""
    sol = solve(_trace_problem(C))
    assert sol.is_optimal
    assert sol.primal_objective == pytest.approx(expected, abs=1e-7)
    assert sol.dual_objective == pytest.approx(np.linalg.eigvalsh(C)[0], abs=1e-7)

    X = sol.X[0]
    assert np.trace(X) == pytest.approx(1.0, abs=1e-8)
    assert np.linalg.eigvalsh(X)[0] >= -1e-8
    assert np.linalg.eigvalsh(sol.S[0])[0] >= -1e-8
    assert sol.nearly_optimal(1e-8)


def test_free_variables():
    """Test min z s.t. z - x1 = -1, x1 + x2 = 2 with z free"""
    builder = SdpBuilder(2)
    builder.add_lp([0.0, 0.0])
    builder.add_lp_coefficients([0, 1, 1], [0, 0, 1], [-1.0, 1.0, 1.0])
    index = builder.add_free([1.0, 0.0], objective=1.0)
    builder.set_rhs([-1.0, 2.0])
    problem = builder.build()
    assert index == 0
    assert problem.n_free == 1

    sol = solve(problem)
    assert sol.is_optimal
    assert sol.z[0] == pytest.approx(-1.0, abs=1e-6)
    assert sol.primal_objective == pytest.approx(-1.0, abs=1e-7)


def test_primal_infeasible():
    """Test x >= 0 with x1 + x2 = -1"""
    sol = solve(_lp([0.0, 0.0], [[1.0, 1.0]], [-1.0]))
    assert sol.status == SdpStatus.PRIMAL_INFEASIBLE
    assert not sol.is_optimal


def test_dual_infeasible():
    """Test the unbounded program min -x1 s.t. x1 - x2 = 0"""
    sol = solve(_lp([-1.0, 0.0], [[1.0, -1.0]], [0.0]))
    assert sol.status == SdpStatus.DUAL_INFEASIBLE


def test_infeasible_psd_block():
    """Test trace X = -1 over the PSD cone"""
    builder = SdpBuilder(1)
    block = builder.add_psd_block(2)
    builder.add_psd_coefficients(block, [0, 0], [0, 1], [0, 1], [1.0, 1.0])
    builder.set_rhs([-1.0])
    sol = solve(builder.build())
    assert sol.status == SdpStatus.PRIMAL_INFEASIBLE


def test_iteration_limit_without_farkas():
    """Test that a truncated run reports MaxIter when the ray programs are disabled"""
    solver = InteriorPointSolver({"max_iter": 1, "farkas": False})
    sol = solver.solve(_trace_problem(np.diag([1.0, 2.0])))
    assert sol.status == SdpStatus.MAX_ITER
    assert sol.iterations == 1
    assert not sol.nearly_optimal(1e-9)


def test_solver_options_from_config():
    """Test None entries fall back to the defaults"""
    solver = InteriorPointSolver({"tol": 1e-7, "max_iter": None})
    assert solver.tol == 1e-7
    assert solver.max_iter == 100
    assert solver.use_farkas


def test_independent_rows_drops_duplicates():
    """Test removal of a repeated equality row"""
    problem = _lp([1.0, 1.0], [[1.0, 1.0], [2.0, 2.0], [1.0, -1.0]], [1.0, 2.0, 0.0])
    reduced, kept, inconsistency = problem.independent_rows()
    assert reduced.m == 2
    assert len(kept) == 2
    assert inconsistency == pytest.approx(0.0, abs=1e-12)

    sol = solve(reduced)
    assert sol.is_optimal
    np.testing.assert_allclose(sol.x_lp, [0.5, 0.5], atol=1e-6)


def test_independent_rows_reports_inconsistency():
    """Test the right-hand side mismatch of a dropped row"""
    problem = _lp([1.0, 1.0], [[1.0, 1.0], [1.0, 1.0]], [1.0, 3.0])
    reduced, _, inconsistency = problem.independent_rows()
    assert reduced.m == 1
    assert inconsistency == pytest.approx(2.0)


def test_auxiliary_programs_have_expected_shape():
    """Test the ray programs add one row or one free column"""
    problem = _trace_problem(np.eye(2))
    improving = problem.dual_infeasibility_problem()
    farkas = problem.primal_infeasibility_problem()
    assert isinstance(improving, SdpProblem)
    assert improving.m == problem.m + 1
    assert improving.b[-1] == -1.0
    assert farkas.n_free == problem.n_free + 1
    np.testing.assert_allclose(farkas.b, [2.0])


def test_truncated_run_reports_least_infeasible_iterate():
    """Test that MaxIter returns finite residuals no worse than a shorter run"""
    problem = _trace_problem(np.diag([1.0, 2.0, 4.0]))
    short = InteriorPointSolver({"max_iter": 2, "farkas": False}).solve(problem)
    longer = InteriorPointSolver({"max_iter": 6, "farkas": False}).solve(problem)
    for sol in (short, longer):
        assert sol.status in (SdpStatus.MAX_ITER, SdpStatus.OPTIMAL)
        assert np.isfinite(sol.max_residual())
        assert np.all(np.linalg.eigvalsh(sol.X[0]) > 0)
    assert longer.max_residual() <= short.max_residual()


def test_shift_restores_cholesky():
    """Test the identity shift on a rank-deficient block and the breakdown past the limit"""
    singular = np.array([[1.0, 1.0], [1.0, 1.0]])
    fine = np.diag([2.0, 3.0])
    shifted, untouched = _restore_definiteness([singular, fine], "X")
    np.testing.assert_array_equal(untouched, fine)
    assert np.linalg.cholesky(shifted) is not None
    assert np.max(np.abs(shifted - singular)) < 1e-8

    with pytest.raises(_NumericalBreakdown):
        _restore_definiteness([np.diag([1.0, -1.0])], "S")


def test_equality_constrained_sdp_without_interior():
    """
    Test min X_11 s.t. X_22 = 0, trace X = 1: the feasible set has no
    interior point, the solver still ends at the optimum X = e1 e1^T
    """
    builder = SdpBuilder(2)
    block = builder.add_psd_block(2, "X")
    builder.add_psd_coefficients(block, [0, 1, 1], [1, 0, 1], [1, 0, 1], [1.0, 1.0, 1.0])
    builder.set_psd_objective(block, np.diag([1.0, 0.0]))
    builder.set_rhs([0.0, 1.0])
    sol = InteriorPointSolver({"farkas": False}).solve(builder.build())
    assert sol.status in (SdpStatus.OPTIMAL, SdpStatus.MAX_ITER, SdpStatus.NUMERICAL_FAILURE)
    assert np.isfinite(sol.max_residual())
    assert sol.primal_objective == pytest.approx(1.0, abs=1e-4)
