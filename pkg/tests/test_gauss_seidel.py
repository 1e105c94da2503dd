#!/usr/bin/env python3
# -*- coding: utf-8 -*-

"""
Tests of the proximal Gauss-Seidel loop, its termination tests and GNE
verification.
"""


import numpy as np
import pytest

from exceptions import InputError
from gauss_seidel import (
    GaussSeidelSolver,
    GneReport,
    GsConfig,
    GsStatus,
    TauRuleFactory,
    detect_cycle,
    gs_solve,
    has_converged,
    max_block_step,
    player_subproblem,
    restricted_constraints,
    update_tau,
    verify_gne,
    window_spread,
)
from instance_model import BuiltinCatalog, builtin, parse_instance
from poly_core import BlockLayout

FIXED_SMALL = {"tau0": 0.02, "tau_rule": "fixed"}


def test_tau_rules():
    """Test the fixed, adaptive and zero updates"""
    assert TauRuleFactory.names() == ["adaptive", "fixed", "zero"]
    adaptive = TauRuleFactory.get_rule("adaptive")
    assert adaptive.update(0.1, 0.05) == pytest.approx(0.05)
    assert adaptive.update(0.1, 1e-4) == pytest.approx(0.01)
    assert adaptive.update(0.1, 3.0) == pytest.approx(0.1)
    assert TauRuleFactory.get_rule("fixed").update(0.1, 1e-4) == 0.1
    assert TauRuleFactory.get_rule("zero").update(0.1, 1.0) == 0.0


def test_unknown_tau_rule_rejected():
    """Test that an unregistered rule name is an input error"""
    with pytest.raises(InputError, match="unknown tau rule 'cosine'"):
        TauRuleFactory.get_rule("cosine")


def test_update_tau_uses_block_step():
    """Test max_i ||x_i^(k+1) - x_i^(k)|| over blocks"""
    layout = BlockLayout.from_dims([2, 1])
    assert max_block_step(layout, [3.0, 4.0, 1.0], [0.0, 0.0, 0.0]) == pytest.approx(5.0)
    assert update_tau(0.1, [0.0, 0.03, 0.0], [0.0, 0.0, 0.0], "adaptive", layout) == pytest.approx(0.03)


def test_gs_config():
    """Test validation and construction from a configuration section"""
    cfg = GsConfig.from_dict({"tau0": 0.5, "max_iter": None, "unknown": 1})
    assert cfg.tau0 == 0.5
    assert cfg.max_iter == 200
    assert GsConfig.from_dict({"tau_rule": "zero"}).tau0 == 0.0
    assert cfg.to_dict()["tau_rule"] == "adaptive"

    with pytest.raises(InputError):
        GsConfig(tau0=0.0, tau_rule="fixed")
    with pytest.raises(InputError):
        GsConfig(max_iter=0)
    with pytest.raises(InputError, match="unknown tau rule"):
        GsConfig(tau_rule="cosine")


def test_window_convergence():
    """Test the trailing-window spread"""
    iterates = [np.array([1.0, 0.0])] + [np.array([2.0, 1.0])] * 11
    assert window_spread(iterates, 11) == 0.0
    assert has_converged(iterates, 11, 1e-8)
    assert not has_converged(iterates[:5], 11, 1e-8)
    assert window_spread(iterates, 12) == pytest.approx(1.0)
    assert window_spread(iterates[:1]) == float("inf")


@pytest.mark.parametrize("pattern, expected", [
    ([[0.0]] * 6, 1),
    ([[1.0], [-1.0]] * 4, 2),
    ([[1.0, 1.0], [1.0, -1.0], [-1.0, -1.0], [-1.0, 1.0]] * 3, 4),
    ([[float(k)] for k in range(12)], None),
    ([[1.0], [2.0], [1.0]], None),
])
def test_detect_cycle(pattern, expected):
    """Test the smallest repeating period of the sequence tail"""
    iterates = [np.array(p) for p in pattern]
    assert detect_cycle(iterates, 1e-6, 12) == expected


def test_restricted_constraints_are_scaled():
    """Test restriction to one block and coefficient normalization"""
    inst = parse_instance(
        "players 2\n"
        "player 1\n"
        "  objective: x1_1\n"
        "  constraint: 10*x1_1 - 20*x2_1 >= 0\n"
        "player 2\n"
        "  objective: x2_1\n"
    )
    (c,) = restricted_constraints(inst, 1, np.array([5.0, 1.0]))
    assert c.poly.players() == (1,)
    assert c.poly.eval([2.0, 0.0]) == pytest.approx(0.0)
    assert c.poly.eval([3.0, 0.0]) == pytest.approx(1.0)


def test_player_subproblem_adds_prox_term():
    """Test f_i(x_i, x_-i) + tau ||x_i - center||^2 at the intro example"""
    inst = builtin("intro-1.4")
    point = np.array([1.5, 0.5])
    objective, constraints = player_subproblem(inst, 2, point, tau=0.02)
    # x2^2 - 0.5 x2 + 0.02 (x2 - 0.5)^2
    assert objective.eval([1.5, 1.0]) == pytest.approx(1.0 - 0.5 + 0.02 * 0.25)
    assert len(constraints) == 2
    assert constraints[0].poly.eval([0.0, 0.0]) > 0

    plain, _ = player_subproblem(inst, 2, point)
    assert plain.eval([1.5, 1.0]) == pytest.approx(0.5)


def test_infeasible_subproblem_stops_the_loop():
    """Test ex3.1: x1 moves to 2 and player 2 then has no feasible point"""
    entry = BuiltinCatalog.get_entry("ex3.1")
    trace = gs_solve(entry.build(), entry.start_point(), {"tau0": 0.05, "tau_rule": "fixed"})
    assert trace.status == GsStatus.SUBPROBLEM_INFEASIBLE
    assert trace.failed_at == (1, 2)
    assert trace.status_text() == "SubproblemInfeasible k=1 i=2"
    assert trace.substeps[-1][0] == pytest.approx(2.0, abs=1e-5)
    assert trace.iterations == 0


def test_four_cycle_is_detected():
    """Test ex3.2: sub-step points alternate through four points"""
    entry = BuiltinCatalog.get_entry("ex3.2-cycle")
    trace = GaussSeidelSolver({"tau0": 0.001, "tau_rule": "fixed"}).solve(entry.build(), entry.start_point())
    assert trace.status == GsStatus.CYCLE_DETECTED
    assert trace.period == 4
    visited = {tuple(np.round(x, 4)) for x in trace.substeps[-4:]}
    assert visited == {(1.0, 1.0), (1.0, -1.0), (-1.0, -1.0), (-1.0, 1.0)}


def test_max_iter_reached():
    """Test the sweep limit on a slowly contracting run"""
    entry = BuiltinCatalog.get_entry("ex3.3-limit")
    trace = gs_solve(entry.build(), entry.start_point(), dict(FIXED_SMALL, max_iter=2))
    assert trace.status == GsStatus.MAX_ITER_REACHED
    assert trace.iterations == 2
    assert len(trace.substeps) == 5
    assert trace.taus == [0.02, 0.02, 0.02]


def test_verify_limit_point():
    """Test that (1, 0) fails verification and (0, 0) passes"""
    inst = builtin("ex3.3-limit")
    report = verify_gne(inst, [1.0, 0.0])
    assert not report.is_gne
    assert report.gaps[0] == pytest.approx(1.0, abs=1e-6)
    assert report.eps == pytest.approx(1.0, abs=1e-6)

    report = verify_gne(inst, [0.0, 0.0])
    assert report.is_gne
    assert report.eps <= 1e-6
    assert report.summary().startswith("GNE")


def test_verify_infeasible_point():
    """Test that an infeasible candidate is never a GNE"""
    report = verify_gne(builtin("intro-1.4"), [-1.0, 0.0])
    assert not report.feasible
    assert not report.is_gne


def test_report_with_nan_gap():
    """Test that an infeasible restricted problem makes eps infinite"""
    report = GneReport(gaps=[0.0, float("nan")])
    assert report.eps == float("inf")
    assert not report.is_gne
    assert GneReport(gaps=[1e-9, 2e-7]).is_gne


@pytest.mark.slow
def test_convergence_to_non_gne_limit():
    """Test ex3.3: the run converges to (1, 0), which verification rejects"""
    entry = BuiltinCatalog.get_entry("ex3.3-limit")
    trace = gs_solve(entry.build(), entry.start_point(), FIXED_SMALL)
    assert trace.status == GsStatus.CONVERGED
    np.testing.assert_allclose(trace.x, [1.0, 0.0], atol=1e-6)
    assert not verify_gne(entry.build(), trace.x).is_gne


@pytest.mark.slow
@pytest.mark.parametrize("name", [
    "ex5.2i", "ex5.2ii", "ex5.2iii", "ex5.2iv", "ex5.3", "ex5.4", "ex5.5", "ex5.8-nonconvex",
    "pollution", "internet", "internet-a1",
])
def test_catalog_runs_reach_reference(name):
    """Test the fixed-tau runs against their reported equilibria"""
    entry = BuiltinCatalog.get_entry(name)
    inst = entry.build()
    trace = gs_solve(inst, entry.start_point(), {"tau0": entry.tau0, "tau_rule": entry.tau_rule})
    assert trace.status == GsStatus.CONVERGED
    np.testing.assert_allclose(trace.x, entry.reference, atol=1e-3)
    report = verify_gne(inst, trace.x)
    assert report.is_gne
    assert report.eps <= 1e-6


@pytest.mark.slow
@pytest.mark.parametrize("tau", [0.1, 0.05])
def test_consensus_limit_of_three_players(tau):
    """Test ex5.6: fixed tau drives the iterates to a consensus point, which is a GNE"""
    entry = BuiltinCatalog.get_entry("ex5.6")
    inst = entry.build()
    trace = gs_solve(inst, entry.start_point(), {"tau0": tau, "tau_rule": "fixed", "max_iter": 300})
    assert trace.status in (GsStatus.CONVERGED, GsStatus.MAX_ITER_REACHED)
    x = trace.x
    assert np.ptp(x) <= 1e-3
    assert 1.3 < x[0] < 1.6
    assert verify_gne(inst, x).eps <= 1e-6


def test_zero_rule_cycles_on_three_players():
    """Test ex5.6 with tau = 0: the sub-step points repeat with period 6"""
    entry = BuiltinCatalog.get_entry("ex5.6")
    trace = gs_solve(entry.build(), entry.start_point(), {"tau_rule": "zero", "max_iter": 20})
    assert trace.status == GsStatus.CYCLE_DETECTED
    assert trace.period == 6
    expected = [(1, 1, 2), (1, 2, 2), (1, 2, 1), (2, 2, 1), (2, 1, 1), (2, 1, 2), (1, 1, 2)]
    np.testing.assert_allclose(np.array(trace.substeps[1:8]), np.array(expected, dtype=float), atol=1e-6)
    assert trace.taus[0] == 0.0


@pytest.mark.slow
def test_substeps_minimize_their_subproblems():
    """
    Test every sub-step of the first sweeps of ex5.2iv against a grid over
    the player's own coordinate
    """
    entry = BuiltinCatalog.get_entry("ex5.2iv")
    inst = entry.build()
    trace = gs_solve(inst, entry.start_point(), {"tau0": entry.tau0, "tau_rule": "fixed", "max_iter": 3})
    layout = inst.layout
    grid = np.linspace(-1.0, 1.0, 20001)
    steps = trace.substeps
    for s in range(1, len(steps)):
        k, i = (s - 1) // inst.n_players + 1, (s - 1) % inst.n_players + 1
        before, after = steps[s - 1], steps[s]
        center = trace.iterates[k - 1][layout.block_slice(i)]
        objective, constraints = player_subproblem(inst, i, before, entry.tau0, center)
        values = objective.evaluate_batch(_block_points(layout, i, before, grid))
        feasible = np.ones(grid.size, dtype=bool)
        for c in constraints:
            feasible &= c.poly.evaluate_batch(_block_points(layout, i, before, grid)) >= -1e-9
        chosen = float(objective.eval(after))
        assert chosen <= float(values[feasible].min()) + 1e-6


def _block_points(layout, i, point, grid):
    """Joint points with block i (of dimension 1) replaced by each grid value."""
    points = np.tile(np.asarray(point, dtype=float), (grid.size, 1))
    points[:, layout.block_slice(i)] = grid[:, None]
    return points
