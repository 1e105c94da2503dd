#!/usr/bin/env python3
# -*- coding: utf-8 -*-

"""
Checks of hand-written potential game certificates and the catalog of
known ones.

The identity P(y_i, x_{-i}) - P(x) == (p_{i,0} + 1) Delta f_i + p_{i,1} is
checked exactly on coefficients; nonnegativity of p_{i,0}, p_{i,1} on K_i
is only spot-checked on random points of K_i, which can falsify but never
prove it.
"""

import logging
from dataclasses import dataclass, field
from typing import Any, Callable, Dict, List, Optional, Sequence, Tuple

import numpy as np

from exceptions import UnknownBuiltinError
from gpg_certifier.ki import build_ki, delta_p
from instance_model import GneppInstance
from poly_core import Polynomial

logger = logging.getLogger(__name__)

DEFAULT_MANUAL_CONFIG: Dict[str, Any] = {
    "cert_tol": 1e-6,
    "samples": 1000,
    "sample_box": 10.0,
    "sample_attempts": 200000,
    "seed": 0,
}

# (p_{i,0}, p_{i,1}) over the (x, y_i) layout of player i
Multipliers = Tuple[Polynomial, Polynomial]


@dataclass
class PlayerCheck:
    """
    Attributes:
        residual: Coefficient infinity norm of the identity
        samples: Points of K_i found by sampling
        min_p0, min_p1: Smallest sampled values of p_{i,0}, p_{i,1}
        note: Why sampling was skipped, if it was
    """

    player: int
    residual: float
    samples: int = 0
    min_p0: float = float("nan")
    min_p1: float = float("nan")
    note: str = ""


@dataclass
class ManualCheckReport:
    players: List[PlayerCheck] = field(default_factory=list)
    cert_tol: float = 1e-6

    @property
    def max_residual(self) -> float:
        return max((p.residual for p in self.players), default=0.0)

    @property
    def identity_holds(self) -> bool:
        return self.max_residual <= self.cert_tol

    @property
    def nonnegative_on_samples(self) -> bool:
        for p in self.players:
            for value in (p.min_p0, p.min_p1):
                if np.isfinite(value) and value < -self.cert_tol:
                    return False
        return True

    @property
    def passed(self) -> bool:
        return self.identity_holds and self.nonnegative_on_samples


def _sample_ki(inst: GneppInstance, i: int, count: int, box: float, attempts: int,
               rng: np.random.Generator, feastol: float) -> np.ndarray:
    """
    Rejection sampling of K_i inside [-box, box]^n.
    """
    ki = build_ki(inst, i)
    dim = ki.layout.total_dim
    found: List[np.ndarray] = []
    total = 0
    batch = max(count, 1000)
    while sum(len(f) for f in found) < count and total < attempts:
        points = rng.uniform(-box, box, size=(batch, dim))
        total += batch
        ok = np.ones(batch, dtype=bool)
        for h in ki.polys[1:]:
            ok &= h.evaluate_batch(points) >= -feastol
        found.append(points[ok])
    if not found:
        return np.zeros((0, dim))
    return np.vstack(found)[:count]


def check_manual(
    inst: GneppInstance,
    potential: Polynomial,
    multipliers: Sequence[Multipliers],
    config: Optional[Dict[str, Any]] = None,
) -> ManualCheckReport:
    """
    Check a hand-supplied certificate.

    Args:
        inst: Instance
        potential: P over x
        multipliers: (p_{i,0}, p_{i,1}) per player, over the (x, y_i) layout
            of that player (see gpg_certifier.ki.copy_layout)
        config: Options cert_tol, samples, sample_box, sample_attempts, seed

    Returns:
        ManualCheckReport
    """
    settings = {**DEFAULT_MANUAL_CONFIG, **{k: v for k, v in (config or {}).items() if v is not None}}
    cert_tol = float(settings["cert_tol"])
    rng = np.random.default_rng(int(settings["seed"]))
    report = ManualCheckReport(cert_tol=cert_tol)

    for i, (p0, p1) in enumerate(multipliers, start=1):
        ki = build_ki(inst, i)
        df = ki.polys[-1]
        residual = (delta_p(potential, inst, i) - (p0 + 1.0) * df - p1).coefficient_norm()
        check = PlayerCheck(player=i, residual=residual)
        if ki.has_equalities:
            check.note = "sampling skipped: K_i has equality constraints"
        else:
            points = _sample_ki(inst, i, int(settings["samples"]), float(settings["sample_box"]),
                                int(settings["sample_attempts"]), rng, 0.0)
            check.samples = len(points)
            if len(points):
                check.min_p0 = float(np.min(p0.evaluate_batch(points)))
                check.min_p1 = float(np.min(p1.evaluate_batch(points)))
            else:
                check.note = "no sample of K_i found"
        logger.debug(f"Player {i}: residual {residual:.3e}, {check.samples} samples")
        report.players.append(check)
    return report


def _ex43(inst: GneppInstance) -> Tuple[Polynomial, List[Multipliers]]:
    layout = inst.layout
    x1 = Polynomial.variable(layout, 1, 1)
    x2 = Polynomial.variable(layout, 2, 1)
    potential = x1 ** 3 - x1 * x2 + x1
    l1 = build_ki(inst, 1).layout
    l2 = build_ki(inst, 2).layout
    X1, X2, Y1 = (Polynomial.variable(l1, 1, 1), Polynomial.variable(l1, 2, 1), Polynomial.variable(l1, 3, 1))
    step = Y1 - X1
    zero2 = Polynomial.zero(l2)
    return potential, [(step * step, (Y1 * X1 * 3.0 - X2) * step), (zero2, zero2)]


def _ex44(inst: GneppInstance) -> Tuple[Polynomial, List[Multipliers]]:
    potential = inst.player(1).objective
    l1 = build_ki(inst, 1).layout
    l2 = build_ki(inst, 2).layout
    X1, X2, Y2 = (Polynomial.variable(l2, 1, 1), Polynomial.variable(l2, 2, 1), Polynomial.variable(l2, 3, 1))
    s = Y2 + X2
    zero1 = Polynomial.zero(l1)
    return potential, [(zero1, zero1), (X1, (Y2 - X2) * (X1 * s * 4.0 + s * 3.0 - X1))]


def _ex45(inst: GneppInstance) -> Tuple[Polynomial, List[Multipliers]]:
    layout = inst.layout
    base = Polynomial.variable(layout, 1, 1) + Polynomial.variable(layout, 1, 2) + 1.0
    potential = base ** 3 * Polynomial.variable(layout, 2, 1)

    l1 = build_ki(inst, 1).layout
    X = Polynomial.variable(l1, 1, 1) + Polynomial.variable(l1, 1, 2)
    Y = Polynomial.variable(l1, 3, 1) + Polynomial.variable(l1, 3, 2)
    p10 = (Y + 1.0) ** 2 + (X + 1.0) ** 2 + X * Y + X + Y

    l2 = build_ki(inst, 2).layout
    a = Polynomial.variable(l2, 1, 1)
    b = Polynomial.variable(l2, 1, 2)
    step = Polynomial.variable(l2, 3, 1) - Polynomial.variable(l2, 2, 1)
    p20 = (a + b) * 3.0 + 5.0
    p21 = step * (a ** 3 + b ** 3 + a * a * 3.0 + b * b * 3.0 + a * 3.0 + b * 3.0 + 1.0)
    return potential, [(p10, Polynomial.zero(l1)), (p20, p21)]


class ManualCertificates:
    """
    Registry of hand-written certificates keyed by catalog name.
    """

    _certificates: Dict[str, Callable[[GneppInstance], Tuple[Polynomial, List[Multipliers]]]] = {
        "ex4.3": _ex43,
        "ex5.2i": _ex43,
        "ex4.4": _ex44,
        "ex5.2ii": _ex44,
        "ex4.5": _ex45,
        "ex5.2iii": _ex45,
    }

    @classmethod
    def register(cls, name: str, builder: Callable[[GneppInstance], Tuple[Polynomial, List[Multipliers]]]) -> None:
        cls._certificates[name] = builder
        logger.info(f"Registered manual certificate: {name}")

    @classmethod
    def names(cls) -> List[str]:
        return sorted(cls._certificates)

    @classmethod
    def get(cls, name: str, inst: GneppInstance) -> Tuple[Polynomial, List[Multipliers]]:
        if name not in cls._certificates:
            raise UnknownBuiltinError(f"no manual certificate for '{name}'; available: {', '.join(cls.names())}")
        return cls._certificates[name](inst)


def manual_certificate(name: str, inst: GneppInstance) -> Tuple[Polynomial, List[Multipliers]]:
    return ManualCertificates.get(name, inst)
