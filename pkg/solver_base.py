#!/usr/bin/env python3
# -*- coding: utf-8 -*-

"""
Base component module defining the common shape of every numerical solver
in the toolkit: a configuration section plus a class-named logger.
"""

import abc
import logging
from typing import Dict, Any, Optional


class BaseSolver(abc.ABC):
    """
    Abstract base class for the solver components.

    Subclasses read their tuning parameters from a configuration section
    (see config_handler.DEFAULT_CONFIG) and expose a single `solve` entry.
    """

    # Section of the configuration this component reads
    config_section: str = ""

    def __init__(self, config: Optional[Dict[str, Any]] = None):
        """
        Initialize the solver with configuration.

        Args:
            config: Configuration dictionary for this solver (one section)
        """
        self.config = dict(config or {})
        self.logger = logging.getLogger(self.__class__.__name__)

    @abc.abstractmethod
    def solve(self, *args: Any, **kwargs: Any) -> Any:
        """
        Run the component on its input and return a result object.
        """
        pass

    def _option(self, key: str, default: Any) -> Any:
        """
        Read a configuration option, falling back to a default.

        Args:
            key: Option name
            default: Value used when the option is missing or None

        Returns:
            The configured value
        """
        value = self.config.get(key)
        if value is None:
            return default
        return value
