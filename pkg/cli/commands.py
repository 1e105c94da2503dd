#!/usr/bin/env python3
# -*- coding: utf-8 -*-

"""
Subcommands of gnepp.py. Each takes the parsed arguments and the loaded
configuration, prints its report on stdout and returns the exit code.
"""

import argparse
from typing import List

import numpy as np

from cli.bench import BenchRunner
from cli.records import RunRecord
from cli.report import format_bench, format_pop, format_solve, format_verify, machine_lines
from config_handler import ConfigHandler
from exceptions import InputError
from gauss_seidel import GsStatus, ball_constraint, verify_gne
from gpg_certifier import GpgCertifier, check_manual, format_certificate, format_manual, manual_certificate
from instance_model import parse_dims
from pipeline import Pipeline, SolveOutcome, resolve_instance
from pop_hierarchy import PopSolver, PopStatus

EXIT_OK = 0
EXIT_NOT_VERIFIED = 1
EXIT_INFEASIBLE = 2
EXIT_INPUT_ERROR = 3


def emit(lines: List[str]) -> None:
    for line in lines:
        print(line)


def parse_point(text: str) -> np.ndarray:
    """
    Read a point like "1,2,3" or "(1, 2, 3)".

    Raises:
        InputError: If the text is not a comma separated list of numbers
    """
    cleaned = text.strip().strip("()[] ")
    try:
        values = [float(part) for part in cleaned.split(",") if part.strip()]
    except ValueError:
        raise InputError(f"cannot read a point from '{text}'") from None
    if not values:
        raise InputError(f"cannot read a point from '{text}'")
    return np.array(values)


def solve_exit_code(outcome: SolveOutcome) -> int:
    if outcome.trace.status == GsStatus.SUBPROBLEM_INFEASIBLE:
        return EXIT_INFEASIBLE
    return EXIT_OK if outcome.success else EXIT_NOT_VERIFIED


def cmd_solve(args: argparse.Namespace, handler: ConfigHandler) -> int:
    """
    Gauss-Seidel solve followed by verification of the final iterate.
    """
    handler.override("gauss_seidel", tau0=args.tau0, tau_rule=args.tau_rule, max_iter=args.max_iter,
                     conv_tol=args.conv_tol, ball_radius=args.add_ball)
    handler.override("verify", gne_tol=args.gne_tol)
    handler.override("pop", rank_tol=args.rank_tol, extraction_seed=args.seed, order_max=args.order_max)

    inst, entry = resolve_instance(args.problem, args.builtin, handler.get_section("parser"))
    pipeline = Pipeline(handler.get_config())
    if entry is not None:
        pipeline.apply_entry(entry, tau0=args.tau0, tau_rule=args.tau_rule)
    x0 = parse_point(args.x0) if args.x0 else None
    outcome = pipeline.run(inst, pipeline.start_point(inst, entry, x0))

    record = RunRecord.from_outcome(outcome, seed=args.seed)
    emit(format_solve(outcome, record, entry))
    return solve_exit_code(outcome)


def cmd_verify(args: argparse.Namespace, handler: ConfigHandler) -> int:
    """
    GNE verification at a given point.
    """
    handler.override("pop", rank_tol=args.rank_tol, extraction_seed=args.seed, order_max=args.order_max)
    inst, _ = resolve_instance(args.problem, args.builtin, handler.get_section("parser"))
    point = inst.layout.vector(parse_point(args.point))
    gne_tol = args.gne_tol if args.gne_tol is not None else handler.get_section("verify").get("gne_tol", 1e-6)
    report = verify_gne(inst, point, float(gne_tol), handler.get_section("pop"), handler.get_section("sdp"),
                        args.add_ball)
    emit(format_verify(report, point))
    return EXIT_OK if report.is_gne else EXIT_NOT_VERIFIED


def cmd_certify(args: argparse.Namespace, handler: ConfigHandler) -> int:
    """
    Potential game certification, computed or from the hand-written catalog.
    """
    handler.override("certify", cert_tol=args.cert_tol, degree=args.cert_degree, retries=args.retries)
    inst, _ = resolve_instance(args.problem, args.builtin, handler.get_section("parser"))
    section = handler.get_section("certify")

    if args.manual:
        potential, multipliers = manual_certificate(args.builtin or inst.name, inst)
        report = check_manual(inst, potential, multipliers, section)
        emit([f"P(x) = {potential.to_text(precision=6)}"] + format_manual(report))
        emit(machine_lines({
            "status": "Passed" if report.passed else "Failed",
            "max_residual": report.max_residual,
        }))
        return EXIT_OK if report.passed else EXIT_NOT_VERIFIED

    result = GpgCertifier(section, handler.get_section("sdp")).solve(inst)
    emit(format_certificate(result))
    items = {"status": result.status, "degrees_tried": [2 * d for d in result.orders_tried]}
    if result.certificate is not None:
        items.update({
            "degree": result.certificate.degree,
            "max_residual": result.certificate.max_residual,
            "min_eigenvalue": result.certificate.min_eigenvalue,
        })
    emit(machine_lines(items))
    return EXIT_OK if result.certified else EXIT_NOT_VERIFIED


def cmd_bench(args: argparse.Namespace, handler: ConfigHandler) -> int:
    """
    Random benchmark batch. Per-instance failures are counted, not raised.
    """
    handler.override("bench", tau0=args.tau0, max_iter=args.max_iter, gne_tol=args.gne_tol, workers=args.workers)
    dims = parse_dims(args.dims) if args.dims else (2,) * args.players
    runner = BenchRunner(handler.get_config())
    jobs = runner.jobs(args.players, dims, args.deg, args.constraint, args.count, args.seed)
    records = runner.run(jobs, progress=not args.quiet)
    label = {"players": args.players, "dims": dims, "degree": args.deg, "constraint": args.constraint}
    emit(format_bench(records, label))
    return EXIT_OK


def cmd_pop(args: argparse.Namespace, handler: ConfigHandler) -> int:
    """
    Direct minimization of a single-player problem file.
    """
    handler.override("pop", rank_tol=args.rank_tol, extraction_seed=args.seed, order_max=args.order_max)
    inst, _ = resolve_instance(args.problem, None, handler.get_section("parser"))
    if inst.n_players != 1:
        raise InputError(f"pop expects a single-player problem, got {inst.n_players} players")
    problem = inst.player(1)
    constraints = list(problem.constraints)
    if args.add_ball is not None:
        constraints.append(ball_constraint(inst, 1, args.add_ball))

    solver = PopSolver(handler.get_section("pop"), handler.get_section("sdp"))
    variables = inst.layout.block_variables(1)
    result = solver.solve(problem.objective, constraints, variables)
    emit(format_pop(result, variables))
    if result.status == PopStatus.INFEASIBLE:
        return EXIT_INFEASIBLE
    return EXIT_OK if result.solved else EXIT_NOT_VERIFIED

