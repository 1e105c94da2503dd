#!/usr/bin/env python3
# -*- coding: utf-8 -*-

"""
Result type of the Moment-SOS hierarchy.
"""

import enum
from dataclasses import dataclass, field
from typing import List, Optional, Sequence

import numpy as np


class PopStatus(str, enum.Enum):
    INFEASIBLE = "Infeasible"
    MINIMIZERS_EXTRACTED = "MinimizersExtracted"
    BOUND_ONLY = "BoundOnly"
    ORDER_CAP_REACHED = "OrderCapReached"


@dataclass
class PopResult:
    """
    Outcome of pop_minimize.

    Attributes:
        status: Final status
        order: Last relaxation order solved
        bound: Lower bound theta_d (-inf when the relaxation is unbounded)
        minimizers: Extracted global minimizers, block coordinates
        residuals: Per minimizer (constraint violation, |f(u) - theta_d|)
        rank: Rank r of the flat moment matrix
        level: Level t at which flat truncation held
        bounds: theta_d of every order attempted
        unbounded: The last relaxation was unbounded below
        sdp_iterations: Interior-point iterations over all orders
        message: Free-form note
    """

    status: PopStatus
    order: int = 0
    bound: float = float("-inf")
    minimizers: List[np.ndarray] = field(default_factory=list)
    residuals: List[tuple] = field(default_factory=list)
    rank: Optional[int] = None
    level: Optional[int] = None
    bounds: List[float] = field(default_factory=list)
    unbounded: bool = False
    sdp_iterations: int = 0
    message: str = ""

    @property
    def solved(self) -> bool:
        return self.status == PopStatus.MINIMIZERS_EXTRACTED

    @property
    def infeasible(self) -> bool:
        return self.status == PopStatus.INFEASIBLE

    def best_minimizer(self, reference: Optional[Sequence[float]] = None) -> np.ndarray:
        """
        The extracted minimizer closest to `reference` (the first one when
        no reference is given).
        """
        if not self.minimizers:
            raise ValueError(f"no minimizers available, status {self.status.value}")
        if reference is None or len(self.minimizers) == 1:
            return self.minimizers[0]
        ref = np.asarray(reference, dtype=float).reshape(-1)
        distances = [float(np.linalg.norm(u - ref)) for u in self.minimizers]
        return self.minimizers[int(np.argmin(distances))]

    def summary(self) -> str:
        text = f"{self.status.value} at order {self.order}, bound {self.bound:.10g}"
        if self.minimizers:
            text += f", {len(self.minimizers)} minimizer(s), rank {self.rank} at t={self.level}"
        return text
