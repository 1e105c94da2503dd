#!/usr/bin/env python3
# -*- coding: utf-8 -*-

"""
Gauss-Seidel package: the proximal Gauss-Seidel method, tau update rules,
termination tests and GNE verification.
"""

from gauss_seidel.config import GsConfig
from gauss_seidel.tau import TauRule, TauRuleFactory, max_block_step, update_tau
from gauss_seidel.cycles import detect_cycle, has_converged, window_spread
from gauss_seidel.subproblem import ball_constraint, player_subproblem, restricted_constraints
from gauss_seidel.solver import GaussSeidelSolver, GsStatus, GsTrace, SubproblemRecord, gs_solve
from gauss_seidel.verify import DEFAULT_GNE_TOL, GneReport, verify_gne

__all__ = [
    'GsConfig',
    'TauRule',
    'TauRuleFactory',
    'max_block_step',
    'update_tau',
    'detect_cycle',
    'has_converged',
    'window_spread',
    'ball_constraint',
    'player_subproblem',
    'restricted_constraints',
    'GaussSeidelSolver',
    'GsStatus',
    'GsTrace',
    'SubproblemRecord',
    'gs_solve',
    'DEFAULT_GNE_TOL',
    'GneReport',
    'verify_gne',
]
