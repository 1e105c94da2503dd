#!/usr/bin/env python3
# -*- coding: utf-8 -*-

"""
Stdout reports of the command-line interface.

Every report is a human-readable part followed by `key=value` machine
lines. Human lines print points with 4 decimals; machine lines carry
full precision (shortest round-trip float text) and never contain
timings, so identical inputs give identical machine lines.
"""

from typing import Any, Dict, Iterable, List, Optional, Sequence

import numpy as np

from cli.records import RunRecord
from gauss_seidel import GneReport, GsStatus, GsTrace
from instance_model import CatalogEntry
from pipeline import SolveOutcome
from poly_core import Variable
from pop_hierarchy import PopResult

POINT_DIGITS = 4


def format_point(x: Iterable[float], digits: int = POINT_DIGITS) -> str:
    # values that round to zero print without a sign
    values = [float(v) if round(float(v), digits) != 0 else 0.0 for v in x]
    return "(" + ", ".join(f"{v:.{digits}f}" for v in values) + ")"


def machine_value(value: Any) -> str:
    """Full-precision text of a value for a key=value line."""
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, (float, np.floating)):
        return repr(float(value))
    if isinstance(value, (list, tuple, np.ndarray)):
        return ",".join(machine_value(v) for v in value)
    if value is None:
        return "none"
    return str(value)


def machine_lines(items: Dict[str, Any]) -> List[str]:
    return [f"{key}={machine_value(value)}" for key, value in items.items()]


def _gap_lines(report: GneReport) -> List[str]:
    lines = []
    for i, (value, optimum, gap, status) in enumerate(
            zip(report.values, report.optima, report.gaps, report.statuses), start=1):
        lines.append(f"  player {i}: f_i(x) = {value:.6g}, f_i* = {optimum:.6g}, gap = {gap:.3e} ({status})")
    return lines


def _cycle_lines(trace: GsTrace) -> List[str]:
    period = trace.period or 0
    pattern = trace.substeps[-period:] if period else []
    if not pattern:
        return []
    return ["cycle: " + " -> ".join(format_point(p) for p in pattern)]


def format_solve(outcome: SolveOutcome, record: RunRecord, entry: Optional[CatalogEntry] = None) -> List[str]:
    """
    Report of the solve command.

    Example:
        instance: ex5.2i: N=2, dims=(1, 1), constraints per player=(5, 5)
        status: Converged after 41 sweeps
        point: (2.0000, 2.0000)
        verification: GNE: eps = 0.000e+00 (gaps 0.000e+00, 0.000e+00), max violation 0.000e+00
        ...
        status=Verified
        iters=41
        eps=0.0
        point=2.0,2.0
    """
    trace = outcome.trace
    lines = [f"instance: {outcome.instance.summary()}",
             f"status: {trace.status_text()} after {trace.iterations} sweeps"]
    if trace.message and trace.message != trace.status.value:
        lines.append(f"detail: {trace.message}")
    lines.append(f"point: {format_point(trace.x)}")
    if trace.taus:
        lines.append(f"final tau: {trace.taus[-1]:.4g}")
    lines.append(f"iteration spread over the last window: {trace.spread:.3e}")
    if trace.status == GsStatus.CYCLE_DETECTED:
        lines.extend(_cycle_lines(trace))
    if outcome.report is not None:
        lines.append(f"verification: {outcome.report.summary()}")
        lines.extend(_gap_lines(outcome.report))
    elif outcome.verify_error:
        lines.append(f"verification failed: {outcome.verify_error}")
    if entry is not None and entry.reference is not None:
        distance = float(np.max(np.abs(trace.x - np.asarray(entry.reference))))
        lines.append(f"reference point: {format_point(entry.reference)} (max deviation {distance:.3e})")

    items: Dict[str, Any] = {"status": record.status, "gs_status": trace.status.value}
    if trace.period is not None:
        items["period"] = trace.period
    if trace.failed_at is not None:
        items["failed_at"] = f"{trace.failed_at[0]},{trace.failed_at[1]}"
    items.update({"iters": record.iterations, "eps": record.eps, "point": trace.x})
    return lines + machine_lines(items)


def format_verify(report: GneReport, x: Sequence[float]) -> List[str]:
    lines = [f"point: {format_point(x)}", f"verification: {report.summary()}"]
    lines.extend(_gap_lines(report))
    return lines + machine_lines({
        "verified": report.is_gne,
        "feasible": report.feasible,
        "eps": report.eps,
        "gaps": report.gaps,
    })


def format_pop(result: PopResult, variables: Sequence[Variable]) -> List[str]:
    """
    Report of the pop command.

    Example:
        variables: x1_1
        order 1: theta = 1
        status: MinimizersExtracted at order 1, bound 1, 1 minimizer(s), rank 1 at t=1
        minimizer 1: (1.0000)
        status=MinimizersExtracted
        order=1
        bound=1.0000000000000002
        minimizers=1
        minimizer_1=1.0000000000000002
    """
    names = ", ".join(f"x{i}_{j}" for i, j in variables)
    lines = [f"variables: {names}"]
    # an infeasible order stops before recording its bound
    first = result.order - len(result.bounds) + (0 if result.infeasible else 1)
    for d, bound in enumerate(result.bounds, start=first):
        lines.append(f"order {d}: theta = {bound:.10g}")
    lines.append(f"status: {result.summary()}")
    if result.message:
        lines.append(f"detail: {result.message}")
    for k, u in enumerate(result.minimizers, start=1):
        lines.append(f"minimizer {k}: {format_point(u)}")

    items: Dict[str, Any] = {
        "status": result.status.value,
        "order": result.order,
        "bound": result.bound,
        "minimizers": len(result.minimizers),
    }
    for k, u in enumerate(result.minimizers, start=1):
        items[f"minimizer_{k}"] = u
    return lines + machine_lines(items)


def format_bench(records: Sequence[RunRecord], label: Dict[str, Any]) -> List[str]:
    """
    Summary table of a benchmark batch, one row per configuration.

    Example:
        N  dims     d  constraint  count  solved  rate     avg time  avg iters
        3  (2,2,2)  3  simplex     20     19      95.0%    4.21 s    38.5
        count=20
        solved=19
        success_rate=0.95
    """
    count = len(records)
    solved = sum(1 for r in records if r.success)
    rate = solved / count if count else 0.0
    dims = "(" + ",".join(str(n) for n in label["dims"]) + ")"
    header = f"{'N':<3}{'dims':<12}{'d':<3}{'constraint':<12}{'count':<7}{'solved':<8}{'rate':<9}" \
             f"{'avg time':<10}{'avg iters':<10}"
    lines = [header]
    if count:
        avg_time = sum(r.wall_time for r in records) / count
        avg_iters = sum(r.iterations for r in records) / count
        lines.append(f"{label['players']:<3}{dims:<12}{label['degree']:<3}{label['constraint']:<12}{count:<7}"
                     f"{solved:<8}{f'{100 * rate:.1f}%':<9}{f'{avg_time:.2f} s':<10}{avg_iters:<10.1f}")
        for r in records:
            lines.append(f"instance={r.index} seed={r.seed} status={r.status} iters={r.iterations} "
                         f"eps={machine_value(r.eps)}")
    return lines + machine_lines({"count": count, "solved": solved, "success_rate": rate})
