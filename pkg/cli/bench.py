#!/usr/bin/env python3
# -*- coding: utf-8 -*-

"""
Random benchmark harness: solve a batch of random instances and count the
ones that end at a verified equilibrium.
"""

import logging
from concurrent.futures import ProcessPoolExecutor, as_completed
from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional, Sequence, Tuple

import numpy as np
from tqdm import tqdm

from cli.records import RunRecord
from exceptions import GneppError, InputError
from instance_model import random_instance, random_start
from instance_model.generators import RANDOM_CONSTRAINTS
from pipeline import Pipeline

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class BenchJob:
    """Everything one worker needs to build, solve and verify an instance."""

    index: int
    seed: int
    players: int
    dims: Tuple[int, ...]
    degree: int
    constraint: str
    config: Dict[str, Any] = field(default_factory=dict)


def instance_seeds(seed: int, count: int) -> List[int]:
    """
    Independent per-instance seeds derived from one batch seed.
    """
    children = np.random.SeedSequence(seed).spawn(count)
    return [int(child.generate_state(1)[0]) for child in children]


def run_job(job: BenchJob) -> RunRecord:
    """
    Solve one random instance. Failures become records, never exceptions.
    """
    name = f"random-{job.index}"
    try:
        inst = random_instance(job.players, job.dims, job.degree, job.constraint, job.seed)
        name = inst.name
        pipeline = Pipeline(job.config)
        outcome = pipeline.run(inst, random_start(inst, job.constraint))
        return RunRecord.from_outcome(outcome, seed=job.seed, index=job.index)
    except (GneppError, np.linalg.LinAlgError, ValueError) as e:
        logger.error(f"Instance {job.index} (seed {job.seed}) failed: {e}")
        return RunRecord(name=name, status="SubproblemFailed", seed=job.seed, index=job.index, message=str(e))


class BenchRunner:
    """
    Runs a batch of random instances, optionally on a process pool.

    Args:
        config: Full configuration; the `bench` section sets tau0, max_iter,
            gne_tol and workers
    """

    def __init__(self, config: Dict[str, Any]):
        self.logger = logging.getLogger(self.__class__.__name__)
        self.config = config
        bench = config.get("bench", {})
        self.workers = max(1, int(bench.get("workers", 1)))

    def _job_config(self) -> Dict[str, Any]:
        bench = self.config.get("bench", {})
        gs = dict(self.config.get("gauss_seidel", {}))
        gs.update({"tau0": bench.get("tau0", 0.1), "tau_rule": "adaptive", "max_iter": bench.get("max_iter", 200)})
        return {
            "gauss_seidel": gs,
            "pop": dict(self.config.get("pop", {})),
            "sdp": dict(self.config.get("sdp", {})),
            "verify": {"gne_tol": bench.get("gne_tol", 1e-6)},
        }

    def jobs(self, players: int, dims: Sequence[int], degree: int, constraint: str, count: int,
             seed: int) -> List[BenchJob]:
        """
        Raises:
            InputError: If the shape parameters are invalid
        """
        dims = tuple(int(n) for n in dims)
        if count < 0:
            raise InputError(f"count must be >= 0, got {count}")
        if players < 2 or len(dims) != players:
            raise InputError(f"need N >= 2 and one dimension per player, got N={players}, dims={dims}")
        if constraint not in RANDOM_CONSTRAINTS:
            raise InputError(f"unknown constraint '{constraint}', expected one of {RANDOM_CONSTRAINTS}")
        if degree < 1:
            raise InputError(f"degree must be >= 1, got {degree}")
        config = self._job_config()
        return [BenchJob(k, s, players, dims, degree, constraint, config)
                for k, s in enumerate(instance_seeds(seed, count))]

    def run(self, jobs: Sequence[BenchJob], progress: bool = True) -> List[RunRecord]:
        """
        Solve every job; the result list is ordered by job index whatever
        the completion order.
        """
        records: List[Optional[RunRecord]] = [None] * len(jobs)
        if not jobs:
            return []
        self.logger.info(f"Running {len(jobs)} instances with {self.workers} worker(s)")
        if self.workers == 1:
            for job in tqdm(jobs, desc="bench", disable=not progress):
                records[job.index] = run_job(job)
        else:
            with ProcessPoolExecutor(max_workers=self.workers) as executor:
                futures = {executor.submit(run_job, job): job.index for job in jobs}
                for future in tqdm(as_completed(futures), total=len(futures), desc="bench", disable=not progress):
                    records[futures[future]] = future.result()
        return [r for r in records if r is not None]
