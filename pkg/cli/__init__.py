#!/usr/bin/env python3
# -*- coding: utf-8 -*-

"""
Command-line package: subcommands, reports and the random benchmark.
"""

from cli.records import NOT_VERIFIED, VERIFIED, RunRecord
from cli.report import format_bench, format_point, format_pop, format_solve, format_verify, machine_lines
from cli.bench import BenchJob, BenchRunner, instance_seeds, run_job
from cli.commands import (
    EXIT_INFEASIBLE,
    EXIT_INPUT_ERROR,
    EXIT_NOT_VERIFIED,
    EXIT_OK,
    cmd_bench,
    cmd_certify,
    cmd_pop,
    cmd_solve,
    cmd_verify,
    parse_point,
)
from cli.main import build_parser, main, setup_logging

__all__ = [
    'NOT_VERIFIED',
    'VERIFIED',
    'RunRecord',
    'format_bench',
    'format_point',
    'format_pop',
    'format_solve',
    'format_verify',
    'machine_lines',
    'BenchJob',
    'BenchRunner',
    'instance_seeds',
    'run_job',
    'EXIT_INFEASIBLE',
    'EXIT_INPUT_ERROR',
    'EXIT_NOT_VERIFIED',
    'EXIT_OK',
    'cmd_bench',
    'cmd_certify',
    'cmd_pop',
    'cmd_solve',
    'cmd_verify',
    'parse_point',
    'build_parser',
    'main',
    'setup_logging',
]
