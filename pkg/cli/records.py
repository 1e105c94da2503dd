#!/usr/bin/env python3
# -*- coding: utf-8 -*-

"""
Per-run records shared by the solve and bench commands.
"""

from dataclasses import dataclass, field
from typing import List, Optional

from gauss_seidel import GsStatus
from pipeline import SolveOutcome

VERIFIED = "Verified"
NOT_VERIFIED = "NotVerified"


@dataclass
class RunRecord:
    """
    One solved instance.

    Attributes:
        name: Instance name
        seed: Generator seed, for random instances
        status: A Gauss-Seidel status, or Verified / NotVerified after convergence
        iterations: Sweeps performed
        eps: Largest per-player gap at the final iterate (inf if unknown)
        wall_time: Seconds for solve and verification
        gaps: Per-player gaps
        index: Position in a benchmark batch
        message: Detail of a failure
    """

    name: str
    status: str
    iterations: int = 0
    eps: float = float("inf")
    wall_time: float = 0.0
    gaps: List[float] = field(default_factory=list)
    seed: Optional[int] = None
    index: int = 0
    message: str = ""

    @classmethod
    def from_outcome(cls, outcome: SolveOutcome, seed: Optional[int] = None, index: int = 0) -> "RunRecord":
        trace = outcome.trace
        if trace.status == GsStatus.CONVERGED and outcome.report is not None:
            status = VERIFIED if outcome.verified else NOT_VERIFIED
        else:
            status = trace.status.value
        report = outcome.report
        return cls(
            name=outcome.instance.name,
            status=status,
            iterations=trace.iterations,
            eps=report.eps if report is not None else float("inf"),
            wall_time=outcome.seconds,
            gaps=list(report.gaps) if report is not None else [],
            seed=seed,
            index=index,
            message=outcome.verify_error or trace.message,
        )

    @property
    def success(self) -> bool:
        return self.status == VERIFIED
