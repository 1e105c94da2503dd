#!/usr/bin/env python3
# -*- coding: utf-8 -*-

"""
Settings of the proximal Gauss-Seidel loop.
"""

from dataclasses import asdict, dataclass, fields
from typing import Any, Dict, Optional

from exceptions import InputError
from gauss_seidel.tau import TauRuleFactory


@dataclass(frozen=True)
class GsConfig:
    """
    Attributes:
        tau0: Initial proximal weight
        tau_rule: "fixed", "adaptive" or "zero"
        max_iter: Maximal number of sweeps
        conv_window: Number of trailing iterates compared for convergence
        conv_tol: Max pairwise infinity-norm difference inside the window
        cycle_tol: Tolerance of the cycle test
        cycle_max_period: Longest period looked for
        feastol: Feasibility tolerance of the starting point check
        ball_radius: R of the constraint R - ||x_i||^2 >= 0 added to every
            subproblem, None for none
    """

    tau0: float = 0.1
    tau_rule: str = "adaptive"
    max_iter: int = 200
    conv_window: int = 11
    conv_tol: float = 1e-8
    cycle_tol: float = 1e-6
    cycle_max_period: int = 12
    feastol: float = 1e-8
    ball_radius: Optional[float] = None

    def __post_init__(self):
        if self.tau_rule not in TauRuleFactory.names():
            raise InputError(f"unknown tau rule '{self.tau_rule}', expected one of {TauRuleFactory.names()}")
        if self.tau_rule != "zero" and self.tau0 <= 0:
            raise InputError(f"tau0 must be positive for the {self.tau_rule} rule, got {self.tau0}; "
                             "use the zero rule explicitly for tau = 0 runs")
        if self.tau0 < 0:
            raise InputError(f"tau0 must be nonnegative, got {self.tau0}")
        if self.max_iter < 1 or self.conv_window < 2:
            raise InputError("max_iter must be >= 1 and conv_window >= 2")
        if self.ball_radius is not None and not self.ball_radius > 0:
            raise InputError(f"ball_radius must be positive, got {self.ball_radius}")

    @classmethod
    def from_dict(cls, section: Optional[Dict[str, Any]] = None) -> "GsConfig":
        """
        Build from a configuration section, ignoring unknown or None keys.
        """
        names = {f.name for f in fields(cls)}
        values = {k: v for k, v in (section or {}).items() if k in names and v is not None}
        if values.get("tau_rule") == "zero":
            values["tau0"] = 0.0
        return cls(**values)

    def to_dict(self) -> Dict[str, Any]:
        return asdict(self)
