#!/usr/bin/env python3
# -*- coding: utf-8 -*-

"""
Argument parsing, logging setup and exit-code mapping of gnepp.py.

Exit codes:
    0  verified GNE / certified / minimizers extracted / bench finished
    1  not converged, not verified or not certified
    2  infeasibility detected
    3  input error (bad file, unknown builtin, bad arguments)
"""

import argparse
import logging
import sys
from typing import List, Optional, Sequence

from cli import commands
from cli.commands import EXIT_INPUT_ERROR, EXIT_NOT_VERIFIED
from config_handler import ConfigHandler
from exceptions import InputError, SolverError
from gauss_seidel import TauRuleFactory
from instance_model import BuiltinCatalog
from instance_model.generators import RANDOM_CONSTRAINTS

LOG_FORMAT = '%(asctime)s - %(name)s - %(levelname)s - %(message)s'
DEFAULT_LOG_FILE = "gnepp.log"


class _ArgumentParser(argparse.ArgumentParser):
    """argparse parser whose usage errors exit with the input-error code."""

    def error(self, message: str) -> None:
        self.print_usage(sys.stderr)
        self.exit(EXIT_INPUT_ERROR, f"{self.prog}: error: {message}\n")


def _positive_int(text: str) -> int:
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {value}")
    return value


def _add_source(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("problem", nargs="?", default=None, help="Problem file")
    parser.add_argument("--builtin", "-b", default=None, metavar="NAME",
                        help=f"Catalog instance instead of a file ({', '.join(BuiltinCatalog.names())})")


def _add_hierarchy(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--order-max", type=_positive_int, default=None, help="Highest relaxation order (d_0 + 3)")
    parser.add_argument("--add-ball", type=float, default=None, metavar="R",
                        help="Add the constraint R - ||x_i||^2 >= 0 to every player problem")
    parser.add_argument("--rank-tol", type=float, default=None, help="Rank tolerance of flat truncation (1e-6)")
    parser.add_argument("--seed", type=int, default=None, help="Seed of minimizer extraction (0)")


def build_parser() -> argparse.ArgumentParser:
    parser = _ArgumentParser(prog="gnepp.py", description="Generalized Nash equilibrium problems of polynomials")
    parser.add_argument("--config", "-c", default=None, help="Path to configuration file")
    parser.add_argument("--log-file", default=DEFAULT_LOG_FILE, help="Log file, '' to disable")
    parser.add_argument("--verbose", "-v", action="store_true", help="Debug logging")
    parser.add_argument("--quiet", "-q", action="store_true", help="Warnings and errors only")
    sub = parser.add_subparsers(dest="command", metavar="COMMAND")
    sub.required = True

    solve = sub.add_parser("solve", help="Gauss-Seidel solve and GNE verification")
    _add_source(solve)
    solve.add_argument("--x0", default=None, help="Starting point, e.g. 0,1,2")
    solve.add_argument("--tau0", type=float, default=None, help="Initial regularization (0.1)")
    solve.add_argument("--tau-rule", choices=TauRuleFactory.names(), default=None, help="tau update rule (adaptive)")
    solve.add_argument("--max-iter", type=_positive_int, default=None, help="Maximum sweeps (200)")
    solve.add_argument("--conv-tol", type=float, default=None, help="Convergence tolerance (1e-8)")
    solve.add_argument("--gne-tol", type=float, default=None, help="Verification threshold (1e-6)")
    _add_hierarchy(solve)
    solve.set_defaults(handler=commands.cmd_solve)

    verify = sub.add_parser("verify", help="Check whether a point is a GNE")
    _add_source(verify)
    verify.add_argument("--point", "-x", required=True, help="Candidate point, e.g. 2,2")
    verify.add_argument("--gne-tol", type=float, default=None, help="Verification threshold (1e-6)")
    _add_hierarchy(verify)
    verify.set_defaults(handler=commands.cmd_verify)

    certify = sub.add_parser("certify", help="Certify a generalized potential game")
    _add_source(certify)
    certify.add_argument("--cert-degree", type=_positive_int, default=None,
                         help="Certificate degree 2d (default 2 * (max ceil(deg f_i / 2) + 1))")
    certify.add_argument("--cert-tol", type=float, default=None, help="Residual and eigenvalue tolerance (1e-6)")
    certify.add_argument("--retries", type=int, default=None, help="Higher degrees tried after a failure (1)")
    certify.add_argument("--manual", action="store_true", help="Check the catalogued hand-written certificate")
    certify.set_defaults(handler=commands.cmd_certify)

    bench = sub.add_parser("bench", help="Random instance benchmark")
    bench.add_argument("--players", type=_positive_int, default=3, help="Number of players (3)")
    bench.add_argument("--dims", default=None, help="Block dimensions, e.g. 2,2,2 (2 per player)")
    bench.add_argument("--deg", type=_positive_int, default=2, help="Objective degree (2)")
    bench.add_argument("--constraint", choices=RANDOM_CONSTRAINTS, default="simplex", help="Joint constraint")
    bench.add_argument("--count", type=int, default=20, help="Number of instances (20)")
    bench.add_argument("--seed", type=int, default=1, help="Batch seed (1)")
    bench.add_argument("--max-iter", type=_positive_int, default=None, help="Maximum sweeps (200)")
    bench.add_argument("--tau0", type=float, default=None, help="Initial regularization (0.1)")
    bench.add_argument("--gne-tol", type=float, default=None, help="Verification threshold (1e-6)")
    bench.add_argument("--workers", type=_positive_int, default=None, help="Worker processes (1)")
    bench.set_defaults(handler=commands.cmd_bench)

    pop = sub.add_parser("pop", help="Minimize a single-player problem by the moment hierarchy")
    pop.add_argument("problem", help="Problem file with one player")
    _add_hierarchy(pop)
    pop.set_defaults(handler=commands.cmd_pop)
    return parser


def setup_logging(log_file: Optional[str] = DEFAULT_LOG_FILE, verbose: bool = False, quiet: bool = False) -> None:
    """
    Configure the root logger once: stderr, plus a UTF-8 log file unless
    log_file is empty. Stdout is left to the reports.
    """
    level = logging.DEBUG if verbose else logging.WARNING if quiet else logging.INFO
    handlers: List[logging.Handler] = [logging.StreamHandler(sys.stderr)]
    if log_file:
        handlers.append(logging.FileHandler(log_file, encoding='utf-8'))
    logging.basicConfig(level=level, format=LOG_FORMAT, handlers=handlers)
    logging.getLogger().setLevel(level)


def main(argv: Optional[Sequence[str]] = None) -> int:
    """
    Run one subcommand and return its exit code.
    """
    parser = build_parser()
    args = parser.parse_args(argv)
    setup_logging(args.log_file, args.verbose, args.quiet)
    logger = logging.getLogger("gnepp")

    try:
        handler = ConfigHandler(args.config)
        return args.handler(args, handler)
    except (InputError, OSError) as e:
        logger.error(f"Input error: {e}")
        print(f"error: {e}", file=sys.stderr)
        return EXIT_INPUT_ERROR
    except SolverError as e:
        logger.error(f"Solver error: {e}")
        print(f"error: {e}", file=sys.stderr)
        return EXIT_NOT_VERIFIED
