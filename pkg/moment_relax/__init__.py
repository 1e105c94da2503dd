#!/usr/bin/env python3
# -*- coding: utf-8 -*-

"""
Moment relaxation package: truncated multi-sequences, localizing matrices
and the assembly of moment relaxations into standard-form SDPs.
"""

from moment_relax.tms import MomentIndex, Tms, basis_size, pair
from moment_relax.localizing import LocalizingForm, half_degree, localizing
from moment_relax.relaxation import MomentRelaxation, build_relaxation, constraint_order, min_order

__all__ = [
    'MomentIndex',
    'Tms',
    'basis_size',
    'pair',
    'LocalizingForm',
    'half_degree',
    'localizing',
    'MomentRelaxation',
    'build_relaxation',
    'constraint_order',
    'min_order',
]
