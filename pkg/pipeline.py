#!/usr/bin/env python3
# -*- coding: utf-8 -*-

"""
Solve-and-verify pipeline for GNEPP instances.
This script manages the flow from a problem source to a verified equilibrium.
"""

import argparse
import logging
import time
from dataclasses import dataclass
from typing import Any, Dict, Optional, Tuple

import numpy as np

from config_handler import ConfigHandler
from exceptions import InputError, SolverError
from gauss_seidel import GaussSeidelSolver, GneReport, GsStatus, GsTrace, verify_gne
from instance_model import BuiltinCatalog, CatalogEntry, GneppInstance, load_instance
from poly_core import PointLike

# Terminations after which the last iterate is still worth verifying
_VERIFIABLE = (GsStatus.CONVERGED, GsStatus.CYCLE_DETECTED, GsStatus.MAX_ITER_REACHED)


@dataclass
class SolveOutcome:
    """
    Result of one pipeline run.

    Attributes:
        instance: The solved instance
        trace: Gauss-Seidel trace
        report: Verification of the final iterate, None when skipped or failed
        verify_error: Why verification failed, if it did
        seconds: Wall time of solve plus verification
    """

    instance: GneppInstance
    trace: GsTrace
    report: Optional[GneReport] = None
    verify_error: str = ""
    seconds: float = 0.0

    @property
    def verified(self) -> bool:
        return self.report is not None and self.report.is_gne

    @property
    def success(self) -> bool:
        """Converged to a point that verifies as a GNE."""
        return self.trace.status == GsStatus.CONVERGED and self.verified


def resolve_instance(path: Optional[str] = None, builtin_name: Optional[str] = None,
                     parser_config: Optional[Dict[str, Any]] = None) -> Tuple[GneppInstance, Optional[CatalogEntry]]:
    """
    Load an instance from a problem file or the builtin catalog.

    Args:
        path: Problem file
        builtin_name: Catalog key
        parser_config: The `parser` configuration section

    Returns:
        (instance, catalog entry or None)

    Raises:
        InputError: If neither or both sources are given, or the source is invalid
        OSError: If the file cannot be read
    """
    if bool(path) == bool(builtin_name):
        raise InputError("give exactly one of a problem file or --builtin NAME")
    if builtin_name:
        entry = BuiltinCatalog.get_entry(builtin_name)
        return entry.build(), entry
    return load_instance(path, parser_config), None


class Pipeline:
    """
    Main pipeline class: Gauss-Seidel solve followed by GNE verification.
    """

    def __init__(self, config: Optional[Dict[str, Any]] = None):
        """
        Initialize the pipeline with configuration.

        Args:
            config: Full configuration as produced by ConfigHandler
        """
        self.logger = logging.getLogger("GneppPipeline")
        self.config = config if config is not None else ConfigHandler().get_config()
        self.gs_config = dict(self.config.get("gauss_seidel", {}))
        self.pop_config = dict(self.config.get("pop", {}))
        self.sdp_config = dict(self.config.get("sdp", {}))
        self.gne_tol = float(self.config.get("verify", {}).get("gne_tol", 1e-6))

    def apply_entry(self, entry: CatalogEntry, **overrides: Any) -> None:
        """
        Use the run defaults of a catalog entry, then any explicit overrides.
        """
        self.gs_config["tau0"] = entry.tau0
        self.gs_config["tau_rule"] = entry.tau_rule
        self.gs_config.update({k: v for k, v in overrides.items() if v is not None})
        self.logger.info(f"Using run defaults of '{entry.name}': tau0={self.gs_config['tau0']}, "
                         f"rule={self.gs_config['tau_rule']}")

    def run(self, inst: GneppInstance, x0: PointLike) -> SolveOutcome:
        """
        Execute the full pipeline process.

        Args:
            inst: Instance to solve
            x0: Starting point

        Returns:
            SolveOutcome
        """
        started = time.perf_counter()
        self.logger.info("Starting pipeline execution")

        self.logger.info(f"Step 1: Loaded {inst.summary()}")

        self.logger.info("Step 2: Proximal Gauss-Seidel iterations")
        solver = GaussSeidelSolver(self.gs_config, self.pop_config, self.sdp_config)
        trace = solver.solve(inst, x0)
        outcome = SolveOutcome(instance=inst, trace=trace)

        if trace.status in _VERIFIABLE:
            self.logger.info(f"Step 3: Verifying the final iterate at eps={self.gne_tol:g}")
            try:
                outcome.report = verify_gne(inst, trace.x, self.gne_tol, self.pop_config, self.sdp_config,
                                            self.gs_config.get("ball_radius"))
                self.logger.info(outcome.report.summary())
            except SolverError as e:
                outcome.verify_error = str(e)
                self.logger.error(f"Verification failed: {e}")
        else:
            self.logger.info(f"Step 3: Skipping verification after {trace.status_text()}")

        outcome.seconds = time.perf_counter() - started
        self.logger.info("Pipeline execution completed")
        return outcome

    def start_point(self, inst: GneppInstance, entry: Optional[CatalogEntry] = None,
                    x0: Optional[PointLike] = None) -> np.ndarray:
        """
        Explicit start, else the catalog start, else the origin.
        """
        if x0 is not None:
            return inst.layout.vector(x0)
        if entry is not None:
            return inst.layout.vector(entry.start_point())
        self.logger.warning("No starting point given, starting from the origin")
        return np.zeros(inst.layout.total_dim)


def main():
    """Main entry point for the pipeline."""
    parser = argparse.ArgumentParser(description="GNEPP solve-and-verify pipeline")
    parser.add_argument("--config", "-c", default=None, help="Path to configuration file")
    parser.add_argument("--builtin", "-b", default=None, help="Catalog instance to solve")
    parser.add_argument("problem", nargs="?", default=None, help="Problem file")
    args = parser.parse_args()

    logging.basicConfig(level=logging.INFO, format='%(asctime)s - %(name)s - %(levelname)s - %(message)s')
    handler = ConfigHandler(args.config)
    inst, entry = resolve_instance(args.problem, args.builtin, handler.get_section("parser"))
    pipeline = Pipeline(handler.get_config())
    if entry is not None:
        pipeline.apply_entry(entry)
    outcome = pipeline.run(inst, pipeline.start_point(inst, entry))
    print(f"{outcome.trace.status_text()}, x = {np.round(outcome.trace.x, 4)}")


if __name__ == "__main__":
    main()
