#!/usr/bin/env python3
# -*- coding: utf-8 -*-

"""
Catalog of built-in GNEPP instances.

Each entry carries the instance builder plus the run it is known for:
starting point, regularization schedule and the reported equilibrium, so
that `solve --builtin NAME` reproduces the run without extra flags.
"""

import logging
from dataclasses import dataclass
from typing import Callable, Dict, List, Optional, Tuple

import numpy as np

from exceptions import UnknownBuiltinError
from instance_model.generators import (
    internet_start,
    internet_switching,
    pollution_model,
    pollution_start,
)
from instance_model.instance import Constraint, GneppInstance, PlayerProblem
from instance_model.parser import parse_instance
from poly_core import BlockLayout, Polynomial


@dataclass(frozen=True)
class CatalogEntry:
    """
    One built-in instance with its reference run.

    Attributes:
        name: Catalog key
        builder: Zero-argument callable returning the instance
        start: Starting point x^(0)
        tau0: Initial regularization parameter
        tau_rule: "fixed", "adaptive" or "zero"
        reference: Reported equilibrium, if any
        description: One-line description
    """

    name: str
    builder: Callable[[], GneppInstance]
    start: Tuple[float, ...]
    tau0: float = 0.1
    tau_rule: str = "adaptive"
    reference: Optional[Tuple[float, ...]] = None
    description: str = ""

    def build(self) -> GneppInstance:
        return self.builder()

    def start_point(self) -> np.ndarray:
        return np.array(self.start, dtype=float)


_INTRO = """
players 2
player 1
  objective: x1_1
  constraint: x2_1*(x1_1 - x2_1 - 1) >= 0
  constraint: x1_1 >= 0
player 2
  objective: x2_1^2 - (x1_1 - 1)*x2_1
  constraint: x1_1^2 + x2_1^2 <= 3
  constraint: x2_1 >= 0
"""

_EX31 = """
players 2
player 1
  objective: -x1_1 - x2_1
  constraint: x1_1 >= 0
  constraint: x1_1 <= 2
player 2
  objective: x1_1*x2_1
  constraint: x1_1 + x2_1^2 <= 1
"""

_EX32 = """
players 2
player 1
  objective: x1_1
  constraint: x1_1 >= x2_1
player 2
  objective: x1_1*x2_1
  constraint: x1_1^2 + x2_1^2 == 2
"""

# Shared set X = {1 <= x1, x2 <= 10, x1 >= x2}
_EX43 = """
players 2
player 1
  objective: x1_1 + x2_1
  constraint: x1_1 >= 1
  constraint: x1_1 <= 10
  constraint: x2_1 >= 1
  constraint: x2_1 <= 10
  constraint: x1_1 >= x2_1
player 2
  objective: -x1_1*x2_1
  constraint: x1_1 >= 1
  constraint: x1_1 <= 10
  constraint: x2_1 >= 1
  constraint: x2_1 <= 10
  constraint: x1_1 >= x2_1
"""

_EX44 = """
players 2
player 1
  objective: x1_1^2*x2_1 + x2_1^2*x1_1 - 4*x1_1^4
  constraint: x1_1^3 + x2_1^3 <= 2
  constraint: x1_1 >= 6*x2_1
  constraint: x1_1 >= 0
player 2
  objective: x1_1*x2_1 - 3*x2_1^2
  constraint: x1_1^3 + x2_1^3 <= 2
  constraint: x1_1 >= 6*x2_1
  constraint: x2_1 >= 0.125
"""

# The norm condition is read as ||x1||^2 = 2, the reading under which the
# reported equilibrium (1.3229, 0.5, 1.5229) is feasible.
_EX45 = """
players 2
block x1 2
block x2 1
player 1
  objective: x1_1*x2_1 + x1_2*x2_1
  constraint: x1_1 >= 0.5
  constraint: x1_2 >= 0.5
  constraint: x2_1 >= 0.5
  constraint: x1_1 + x1_2 >= x2_1 - 0.3
  constraint: x1_1 + x1_2 <= x2_1 + 0.3
  constraint: x1_1^2 + x1_2^2 == 2
player 2
  objective: x1_1*x1_2*x2_1
  constraint: x1_1 >= 0.5
  constraint: x1_2 >= 0.5
  constraint: x2_1 >= 0.5
  constraint: x1_1 + x1_2 >= x2_1 - 0.3
  constraint: x1_1 + x1_2 <= x2_1 + 0.3
"""

_EX46 = """
players 2
player 1
  objective: 2*x2_1 - x1_1
  constraint: x1_1^2 + x2_1^2 <= 1
  constraint: x1_1 >= 0
player 2
  objective: x1_1^2 - 2*x1_1*x2_1 - x2_1^2
  constraint: x1_1^2 + x2_1^2 <= 1
  constraint: x2_1 >= 0
"""

_EX53 = """
players 2
block x1 2
block x2 2
player 1
  objective: x1_1*(x1_2 + 2*x2_1 + 2*x2_2) + x1_2*(x2_1 + x2_2) + 2*x2_1*x2_2
  constraint: x1_1 + x1_2 + x2_1 + x2_2 == 1
  constraint: x1_1 >= 0
  constraint: x1_2 >= 0
player 2
  objective: x1_1^2 + x1_2^2 - x2_1^2 - x2_2^2
  constraint: x1_1 + x1_2 + x2_1 + x2_2 == 1
  constraint: x2_1 >= 0
  constraint: x2_2 >= 0
"""

_EX54 = """
players 2
block x1 2
block x2 2
player 1
  objective: -2*x1_2^2 + x2_1*x1_2 + x1_1*x2_1
  constraint: x1_1 + x1_2 + x2_1 + x2_2 == 1
  constraint: x1_1 >= 0.1
  constraint: x1_2 >= 0.1
player 2
  objective: x2_1^2 - 2*x1_2*x2_2 - 2*x1_1*x2_2 + x2_2^2
  constraint: x1_1 + x1_2 + x2_1 + x2_2 == 1
  constraint: x2_1 >= 0.1
  constraint: x2_2 >= 0.1
"""

_EX55 = """
players 2
block x1 2
block x2 2
player 1
  objective: x1_1^2 + x1_2^2 + x1_1 + x1_2
  constraint: x1_1^2 + x1_2^2 + x2_1^2 + x2_2^2 <= 1
  constraint: x1_1 >= 0
  constraint: x1_2 <= 0.5
player 2
  objective: x2_2^2 - x2_1*x2_2
  constraint: x1_1^2 + x1_2^2 + x2_1^2 + x2_2^2 <= 1
  constraint: x2_1 <= 0
  constraint: x2_2 >= 0.3
  constraint: x2_2 <= 0.8
"""

_EX56 = """
players 3
player 1
  objective: (x1_1 - x2_1)^2
  constraint: x1_1^2 + x2_1^2 + x3_1^2 <= 10
player 2
  objective: (x2_1 - x3_1)^2
  constraint: x2_1 <= 3
player 3
  objective: (x3_1 - x1_1)^2
  constraint: x1_1 + x2_1 + x3_1 <= 6
"""

_EX58 = """
players 2
block x1 2
block x2 2
player 1
  objective: x1_1^3 + x1_2*x2_1 + x1_1*x1_2 + x2_2
  constraint: x1_1^2 + x1_2^2 <= 1
player 2
  objective: -x2_1^4 + x1_1*x2_2^2
  constraint: x2_1^2 + x2_2^2 >= x1_1
  constraint: x2_1^2 + x2_2^2 <= 1
"""


def _from_text(text: str, name: str) -> Callable[[], GneppInstance]:
    return lambda: parse_instance(text, name)


def _internet_reference(xs: List[float]) -> Tuple[float, ...]:
    y = 1.0 / sum(xs)
    return tuple(v for x in xs for v in (x, y))


def build_a17() -> GneppInstance:
    """
    Normalized two-player test problem with a shared polyhedral set.
    """
    layout = BlockLayout.from_dims([2, 1])
    x11 = Polynomial.variable(layout, 1, 1)
    x12 = Polynomial.variable(layout, 1, 2)
    x21 = Polynomial.variable(layout, 2, 1)
    f1 = (x11 * x11 + x11 * x12 + x12 * x12) * (1.0 / 38.0) + (x11 + x12) * x21 - x11 * (25.0 / 38.0) - x12
    f2 = (x11 + x12) * x21 * (1.0 / 25.0) + x21 * x21 * (1.0 / 25.0) - x21
    shared = (
        Constraint(14.0 - x11 - x12 * 2.0 + x21),
        Constraint(30.0 - x11 * 3.0 - x12 * 2.0 - x21),
        Constraint(x11),
        Constraint(x12),
    )
    return GneppInstance(layout, (PlayerProblem(f1, shared), PlayerProblem(f2, shared)), "a17")


class BuiltinCatalog:
    """
    Registry of built-in instances keyed by name.
    """

    _entries: Dict[str, CatalogEntry] = {}

    @classmethod
    def register(cls, entry: CatalogEntry) -> None:
        """
        Register (or replace) a catalog entry.

        Args:
            entry: The entry to add
        """
        cls._entries[entry.name] = entry
        logging.getLogger(__name__).debug(f"Registered builtin instance: {entry.name}")

    @classmethod
    def get_entry(cls, name: str) -> CatalogEntry:
        """
        Look up an entry.

        Raises:
            UnknownBuiltinError: If the name is not in the catalog
        """
        try:
            return cls._entries[name]
        except KeyError:
            raise UnknownBuiltinError(
                f"unknown builtin '{name}', available: {', '.join(cls.names())}"
            ) from None

    @classmethod
    def build(cls, name: str) -> GneppInstance:
        return cls.get_entry(name).build()

    @classmethod
    def names(cls) -> List[str]:
        return list(cls._entries)


def builtin(name: str) -> GneppInstance:
    """
    Build a catalogued instance by name.

    Raises:
        UnknownBuiltinError: If the name is not in the catalog
    """
    return BuiltinCatalog.build(name)


def _register_defaults() -> None:
    entries = [
        CatalogEntry("intro-1.4", _from_text(_INTRO, "intro-1.4"), (0.0, 0.0), 0.1, "adaptive", (0.0, 0.0),
                     "two-player example whose origin is a GNE"),
        CatalogEntry("pollution", lambda: pollution_model(name="pollution"), tuple(pollution_start(2)), 0.1,
                     "adaptive", (1.0, 0.0, 0.0, 0.75, 0.0, 0.9375),
                     "environmental pollution control, N=2"),
        CatalogEntry("ex3.1", _from_text(_EX31, "ex3.1"), (0.0, 1.0), 0.05, "fixed", None,
                     "second subproblem becomes infeasible after one step"),
        CatalogEntry("ex3.2-cycle", _from_text(_EX32, "ex3.2-cycle"), (1.0, 1.0), 0.001, "fixed", None,
                     "iterates cycle with period 4"),
        CatalogEntry("ex3.3-limit", _from_text(_INTRO, "ex3.3-limit"), (1.5, 0.5), 0.02, "fixed", (1.0, 0.0),
                     "iterates converge to (1, 0), which is not a GNE"),
        CatalogEntry("ex4.3", _from_text(_EX43, "ex4.3"), (3.0, 2.0), 0.02, "fixed", (2.0, 2.0),
                     "GPG with a shared box and x1 >= x2"),
        CatalogEntry("ex4.4", _from_text(_EX44, "ex4.4"), (1.0, 0.125), 0.02, "fixed", (1.2595, 0.125),
                     "GPG with a cubic shared constraint"),
        CatalogEntry("ex4.5", _from_text(_EX45, "ex4.5"), (1.0, 1.0, 2.0), 0.02, "fixed", (1.3229, 0.5, 1.5229),
                     "GPG with a two-dimensional first block"),
        CatalogEntry("ex4.6", _from_text(_EX46, "ex4.6"), (0.2, 0.3), 0.02, "fixed", (0.9539, 0.3),
                     "GPG certified by the semidefinite program at d=2"),
        CatalogEntry("ex5.2i", _from_text(_EX43, "ex5.2i"), (3.0, 2.0), 0.02, "fixed", (2.0, 2.0),
                     "run of ex4.3"),
        CatalogEntry("ex5.2ii", _from_text(_EX44, "ex5.2ii"), (1.0, 0.125), 0.02, "fixed", (1.2595, 0.125),
                     "run of ex4.4"),
        CatalogEntry("ex5.2iii", _from_text(_EX45, "ex5.2iii"), (1.0, 1.0, 2.0), 0.02, "fixed",
                     (1.3229, 0.5, 1.5229), "run of ex4.5"),
        CatalogEntry("ex5.2iv", _from_text(_EX46, "ex5.2iv"), (0.2, 0.3), 0.02, "fixed", (0.9539, 0.3),
                     "run of ex4.6"),
        CatalogEntry("ex5.3", _from_text(_EX53, "ex5.3"), (0.2, 0.3, 0.2, 0.3), 0.02, "fixed",
                     (0.0, 0.5, 0.0, 0.5), "GPG on the joint simplex"),
        CatalogEntry("ex5.4", _from_text(_EX54, "ex5.4"), (0.25, 0.25, 0.25, 0.25), 0.1, "adaptive",
                     (0.1, 0.4, 0.1, 0.4), "GPG on the simplex with lower bounds 0.1"),
        CatalogEntry("ex5.5", _from_text(_EX55, "ex5.5"), (0.5, 0.5, -0.6, 0.6), 0.1, "adaptive",
                     (0.0, -0.5, 0.0, 0.3), "GPG on the joint unit ball"),
        CatalogEntry("ex5.6", _from_text(_EX56, "ex5.6"), (0.0, 1.0, 2.0), 0.1, "fixed", None,
                     "three players; every consensus point is a GNE"),
        CatalogEntry("ex5.8-nonconvex", _from_text(_EX58, "ex5.8-nonconvex"), (0.5, 0.5, 0.6, 0.6), 0.02,
                     "fixed", (-0.9342, -0.3568, 1.0, 0.0), "nonconvex objectives and feasible set"),
        CatalogEntry("internet", lambda: internet_switching(10, 1.0, "plain"), tuple(internet_start(10, 0.4)),
                     0.1, "adaptive", _internet_reference([0.09] * 10),
                     "internet switching, N=10, B=1"),
        CatalogEntry("internet-a1", lambda: internet_switching(10, 1.0, "a1"), tuple(internet_start(10, 0.3)),
                     0.1, "adaptive", _internet_reference([0.3] + [0.06943] * 9),
                     "internet switching with a boxed first user"),
        CatalogEntry("internet-a1-neg", lambda: internet_switching(10, 1.0, "a1-neg"),
                     tuple(internet_start(10, 0.3)), 0.1, "adaptive", _internet_reference([0.5, 0.492] + [0.001] * 8),
                     "boxed internet switching with negated objectives"),
        CatalogEntry("a17", build_a17, (1.0, 1.0, 1.0), 0.001, "adaptive", None,
                     "normalized two-player test problem with a shared polyhedron"),
    ]
    for entry in entries:
        BuiltinCatalog.register(entry)


_register_defaults()
