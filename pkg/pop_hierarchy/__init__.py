#!/usr/bin/env python3
# -*- coding: utf-8 -*-

"""
Polynomial optimization package: the Moment-SOS hierarchy with flat
truncation and minimizer extraction.
"""

from pop_hierarchy.result import PopResult, PopStatus
from pop_hierarchy.flat_truncation import FlatTruncation, flat_truncation, numerical_rank
from pop_hierarchy.extraction import ExtractionResult, extract_minimizers
from pop_hierarchy.refine import CompiledPolynomial, MinimizerPolisher, PolishedPoint, polish_minimizers
from pop_hierarchy.univariate import UnivariateResult, UnivariateStatus, minimize_univariate
from pop_hierarchy.hierarchy import DEFAULT_POP_CONFIG, PopSolver, pop_minimize

__all__ = [
    'PopResult',
    'PopStatus',
    'FlatTruncation',
    'flat_truncation',
    'numerical_rank',
    'ExtractionResult',
    'extract_minimizers',
    'CompiledPolynomial',
    'MinimizerPolisher',
    'PolishedPoint',
    'polish_minimizers',
    'UnivariateResult',
    'UnivariateStatus',
    'minimize_univariate',
    'DEFAULT_POP_CONFIG',
    'PopSolver',
    'pop_minimize',
]
