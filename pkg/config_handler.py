#!/usr/bin/env python3
# -*- coding: utf-8 -*-

"""
Configuration handler for the GNEPP solvers.
Provides functionality to load, validate, and access configuration settings.
"""

import copy
import os
import logging
from typing import Dict, Any, Optional

import yaml


class ConfigHandler:
    """
    Handles loading and validation of solver configuration.
    """

    # Default configuration for each component
    DEFAULT_CONFIG: Dict[str, Dict[str, Any]] = {
        "sdp": {
            "tol": 1e-9,
            "max_iter": 100,
            "infeas_tol": 1e-8,
            "step_fraction": 0.98,
            "min_step": 1e-10,
            "stall_limit": 5,
            "farkas": True,
        },
        "pop": {
            "order_extra": 3,  # d_max = d_0 + order_extra
            "order_max": None,  # explicit d_max, overrides order_extra
            "rank_tol": 1e-6,
            "feastol": 1e-8,
            "opt_tol": 1e-6,
            "extraction_seed": 0,
            "polish": True,  # SLSQP refinement of extracted atoms
            "polish_maxiter": 200,
            "univariate_fallback": True,  # exact solve of one-variable problems when the SDPs fail
        },
        "gauss_seidel": {
            "tau0": 0.1,
            "tau_rule": "adaptive",  # Options: fixed, adaptive, zero
            "max_iter": 200,
            "conv_window": 11,
            "conv_tol": 1e-8,
            "cycle_tol": 1e-6,
            "cycle_max_period": 12,
            "feastol": 1e-8,
            "ball_radius": None,  # R of the extra constraint R - ||x_i||^2 >= 0
        },
        "verify": {
            "gne_tol": 1e-6,
        },
        "certify": {
            "cert_tol": 1e-6,
            "degree": None,  # None picks 2 * (max ceil(deg f_i / 2) + 1)
            "retries": 1,
            "samples": 1000,
            "sample_box": 10.0,
            "sample_attempts": 200000,
            "seed": 0,
        },
        "bench": {
            "tau0": 0.1,
            "max_iter": 200,
            "gne_tol": 1e-6,
            "workers": 1,
        },
        "parser": {
            "max_degree": 32,
        },
    }

    def __init__(self, config_path: Optional[str] = None):
        """
        Initialize the configuration handler.

        Args:
            config_path: Path to the YAML configuration file, or None for defaults
        """
        self.logger = logging.getLogger("ConfigHandler")
        self.config_path = config_path
        self.config = self._load_config()

    def _defaults(self) -> Dict[str, Any]:
        return copy.deepcopy(self.DEFAULT_CONFIG)

    def _load_config(self) -> Dict[str, Any]:
        """
        Load configuration from YAML file and merge with defaults.

        Returns:
            Dict containing the configuration
        """
        if not self.config_path:
            return self._defaults()
        if not os.path.exists(self.config_path):
            self.logger.warning(f"Config file {self.config_path} not found. Using default configuration.")
            return self._defaults()

        try:
            with open(self.config_path, 'r', encoding='utf-8') as f:
                user_config = yaml.safe_load(f) or {}
            if not isinstance(user_config, dict):
                raise yaml.YAMLError(f"top level must be a mapping, got {type(user_config).__name__}")
        except (OSError, yaml.YAMLError) as e:
            self.logger.error(f"Failed to load config from {self.config_path}: {str(e)}")
            self.logger.warning("Using default configuration")
            return self._defaults()

        # Merge user config with default config
        merged_config = self._defaults()
        for section, values in user_config.items():
            if section not in merged_config:
                self.logger.warning(f"Unknown config section '{section}' kept as is")
                merged_config[section] = values
            elif isinstance(values, dict):
                merged_config[section].update(values)
            elif values is not None:
                self.logger.warning(f"Config section '{section}' is not a mapping; ignored")

        self.logger.info(f"Loaded configuration from {self.config_path}")
        return merged_config

    def get_config(self) -> Dict[str, Any]:
        """
        Get the complete configuration.

        Returns:
            Dict containing the configuration
        """
        return self.config

    def get_section(self, section: str) -> Dict[str, Any]:
        """
        Get a specific section of the configuration.

        Args:
            section: The section name

        Returns:
            Dict containing the section configuration
        """
        return self.config.get(section, {})

    def override(self, section: str, **values: Any) -> None:
        """
        Set values of one section, skipping those that are None.
        Command-line flags use this to take precedence over the file.
        """
        target = self.config.setdefault(section, {})
        target.update({k: v for k, v in values.items() if v is not None})

    def save_config(self, output_path: Optional[str] = None) -> None:
        """
        Save the current configuration to a YAML file.

        Args:
            output_path: Path to save the configuration (defaults to original path)
        """
        path = output_path or self.config_path
        if not path:
            self.logger.error("No path to save the configuration to")
            return

        try:
            with open(path, 'w', encoding='utf-8') as f:
                yaml.safe_dump(self.config, f, default_flow_style=False)
            self.logger.info(f"Configuration saved to {path}")
        except OSError as e:
            self.logger.error(f"Failed to save config to {path}: {str(e)}")


def generate_default_config(output_path: str) -> None:
    """
    Generate a default configuration file.

    Args:
        output_path: Path to save the default configuration
    """
    directory = os.path.dirname(output_path)
    if directory:
        os.makedirs(directory, exist_ok=True)

    with open(output_path, 'w', encoding='utf-8') as f:
        yaml.safe_dump(ConfigHandler.DEFAULT_CONFIG, f, default_flow_style=False)

    print(f"Default configuration saved to {output_path}")


if __name__ == "__main__":
    import argparse

    parser = argparse.ArgumentParser(description="Generate default configuration")
    parser.add_argument("--output", "-o", default="configs/default_config.yaml",
                        help="Path to save the default configuration")
    args = parser.parse_args()

    generate_default_config(args.output)
