#!/usr/bin/env python3
# -*- coding: utf-8 -*-

"""
Instance model package: GNEPP instances, the problem file format, the
built-in catalog and parametric generators.
"""

from instance_model.instance import (
    DEFAULT_FEASTOL,
    Constraint,
    FeasibilityReport,
    GneppInstance,
    PlayerProblem,
    Relation,
    feasibility_residual,
    objective_values,
)
from instance_model.parser import ProblemParser, load_instance, parse_instance, serialize_instance
from instance_model.generators import (
    internet_start,
    internet_switching,
    parse_dims,
    pollution_model,
    random_instance,
    random_start,
)
from instance_model.builtins import BuiltinCatalog, CatalogEntry, builtin

__all__ = [
    'DEFAULT_FEASTOL',
    'Constraint',
    'FeasibilityReport',
    'GneppInstance',
    'PlayerProblem',
    'Relation',
    'feasibility_residual',
    'objective_values',
    'ProblemParser',
    'load_instance',
    'parse_instance',
    'serialize_instance',
    'internet_start',
    'internet_switching',
    'parse_dims',
    'pollution_model',
    'random_instance',
    'random_start',
    'BuiltinCatalog',
    'CatalogEntry',
    'builtin',
]
