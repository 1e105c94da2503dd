#!/usr/bin/env python3
# -*- coding: utf-8 -*-

"""
Exception hierarchy shared by all GNEPP toolkit packages.

Solver outcomes such as an infeasible subproblem or a missing certificate
are reported through status values; exceptions are reserved for bad input
and for numerical breakdowns the caller has to act on.
"""

from typing import Optional


class GneppError(Exception):
    """Root of every error raised by the toolkit."""


class InputError(GneppError, ValueError):
    """Malformed or inconsistent user input."""


class DegreeError(InputError):
    """A polynomial degree exceeds what an operation supports."""


class UnknownBuiltinError(InputError, KeyError):
    """Requested builtin instance is not in the catalog."""

    def __str__(self) -> str:
        return str(self.args[0]) if self.args else "unknown builtin"


class ProblemSyntaxError(InputError):
    """
    Lexical or syntax error in a problem file.

    Args:
        message: Human readable description
        line: 1-based line number of the offending token
        column: 1-based column of the offending token
        text: The source line, when available
    """

    def __init__(self, message: str, line: int, column: int, text: str = ""):
        self.message = message
        self.line = line
        self.column = column
        self.text = text
        super().__init__(f"line {line}, column {column}: {message}")


class SolverError(GneppError):
    """A numerical component could not produce a usable answer."""


class SdpNumericalError(SolverError):
    """
    The interior-point iteration broke down.

    Args:
        message: Description of the breakdown
        order: Relaxation order being solved, if any
    """

    def __init__(self, message: str, order: Optional[int] = None):
        self.order = order
        if order is not None:
            message = f"{message} (relaxation order {order})"
        super().__init__(message)


class SubproblemFailedError(SolverError):
    """
    A Gauss-Seidel subproblem could not be solved.

    Args:
        iteration: Outer iteration k
        player: Player index i (1-based)
        cause: Underlying error
    """

    def __init__(self, iteration: int, player: int, cause: Exception):
        self.iteration = iteration
        self.player = player
        self.cause = cause
        super().__init__(f"subproblem k={iteration}, i={player} failed: {cause}")


class ExtractionError(SolverError):
    """Minimizer extraction from a flat moment sequence failed."""
