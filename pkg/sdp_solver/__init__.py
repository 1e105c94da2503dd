#!/usr/bin/env python3
# -*- coding: utf-8 -*-

"""
SDP solver package: standard-form block SDP data and a dense primal-dual
interior-point method.
"""

from sdp_solver.problem import SdpBuilder, SdpProblem, SdpSolution, SdpStatus
from sdp_solver.interior_point import DEFAULT_SDP_CONFIG, InteriorPointSolver, solve

__all__ = [
    'SdpBuilder',
    'SdpProblem',
    'SdpSolution',
    'SdpStatus',
    'DEFAULT_SDP_CONFIG',
    'InteriorPointSolver',
    'solve',
]
