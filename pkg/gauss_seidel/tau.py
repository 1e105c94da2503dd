#!/usr/bin/env python3
# -*- coding: utf-8 -*-

"""
Update rules for the proximal weight tau.
"""

import abc
import logging
from typing import Dict, Type

import numpy as np

from exceptions import InputError
from poly_core import BlockLayout, PointLike


class TauRule(abc.ABC):
    """Maps (tau_k, max block step) to tau_{k+1} in [0, tau_k]."""

    name: str = ""

    @abc.abstractmethod
    def update(self, tau: float, step: float) -> float:
        pass


class FixedTau(TauRule):
    name = "fixed"

    def update(self, tau: float, step: float) -> float:
        return tau


class AdaptiveTau(TauRule):
    """
    tau_{k+1} = max{min[tau_k, step], 0.1 tau_k}.
    """

    name = "adaptive"

    def update(self, tau: float, step: float) -> float:
        return max(min(tau, step), 0.1 * tau)


class ZeroTau(TauRule):
    """No proximal term; only meaningful as a diagnostic."""

    name = "zero"

    def update(self, tau: float, step: float) -> float:
        return 0.0


class TauRuleFactory:
    """
    Registry of tau rules.
    """

    _rules: Dict[str, Type[TauRule]] = {
        "fixed": FixedTau,
        "adaptive": AdaptiveTau,
        "zero": ZeroTau,
    }

    @classmethod
    def register_rule(cls, name: str, rule_class: Type[TauRule]) -> None:
        cls._rules[name] = rule_class
        logging.getLogger(__name__).info(f"Registered tau rule: {name}")

    @classmethod
    def get_rule(cls, name: str) -> TauRule:
        """
        Instantiate a rule by name.

        Raises:
            InputError: If no rule is registered under `name`
        """
        if name not in cls._rules:
            raise InputError(f"unknown tau rule '{name}', expected one of {cls.names()}")
        return cls._rules[name]()

    @classmethod
    def names(cls):
        return sorted(cls._rules)


def max_block_step(layout: BlockLayout, x_next: PointLike, x_prev: PointLike) -> float:
    """
    max_i ||x_i^(k+1) - x_i^(k)||.
    """
    a = layout.vector(x_next)
    b = layout.vector(x_prev)
    return max(float(np.linalg.norm(a[layout.block_slice(i)] - b[layout.block_slice(i)]))
               for i in range(1, layout.n_players + 1))


def update_tau(tau: float, x_next: PointLike, x_prev: PointLike, rule: str, layout: BlockLayout) -> float:
    """
    One tau update.

    Args:
        tau: Current tau_k >= 0
        x_next: Iterate x^(k+1)
        x_prev: Iterate x^(k)
        rule: Rule name
        layout: Block layout of the points

    Returns:
        tau_{k+1}
    """
    return TauRuleFactory.get_rule(rule).update(tau, max_block_step(layout, x_next, x_prev))
