#!/usr/bin/env python3
# -*- coding: utf-8 -*-

"""
Tests of configuration loading, merging and overrides.
"""

import logging
from pathlib import Path

import yaml

from config_handler import ConfigHandler, generate_default_config


def test_defaults_without_file():
    """Test that no path gives a copy of the defaults"""
    handler = ConfigHandler()
    assert handler.get_section("sdp")["tol"] == 1e-9
    assert handler.get_section("certify")["degree"] is None

    handler.get_section("pop")["rank_tol"] = 1.0
    assert ConfigHandler.DEFAULT_CONFIG["pop"]["rank_tol"] == 1e-6


def test_missing_file_warns(tmp_path, caplog):
    with caplog.at_level(logging.WARNING):
        handler = ConfigHandler(str(tmp_path / "absent.yaml"))
    assert "not found" in caplog.text
    assert handler.get_config() == ConfigHandler.DEFAULT_CONFIG


def test_file_values_merge_over_defaults(tmp_path):
    """Test per-key merging and unknown sections"""
    path = tmp_path / "config.yaml"
    path.write_text(
        "gauss_seidel:\n"
        "  tau0: 0.02\n"
        "  tau_rule: fixed\n"
        "sdp:\n"
        "  max_iter: 60\n"
        "extra:\n"
        "  note: kept\n",
        encoding="utf-8",
    )
    handler = ConfigHandler(str(path))
    gs = handler.get_section("gauss_seidel")
    assert (gs["tau0"], gs["tau_rule"], gs["max_iter"]) == (0.02, "fixed", 200)
    assert handler.get_section("sdp")["max_iter"] == 60
    assert handler.get_section("sdp")["tol"] == 1e-9
    assert handler.get_section("extra") == {"note": "kept"}


def test_malformed_file_falls_back(tmp_path, caplog):
    """Test that unreadable YAML and non-mapping documents give the defaults"""
    bad = tmp_path / "bad.yaml"
    bad.write_text("sdp: [1, 2\n", encoding="utf-8")
    with caplog.at_level(logging.ERROR):
        handler = ConfigHandler(str(bad))
    assert "Failed to load config" in caplog.text
    assert handler.get_config() == ConfigHandler.DEFAULT_CONFIG

    listing = tmp_path / "list.yaml"
    listing.write_text("- 1\n- 2\n", encoding="utf-8")
    assert ConfigHandler(str(listing)).get_config() == ConfigHandler.DEFAULT_CONFIG


def test_override_skips_none():
    """Test that unset command-line flags leave the configuration alone"""
    handler = ConfigHandler()
    handler.override("verify", gne_tol=1e-4)
    handler.override("verify", gne_tol=None)
    handler.override("gauss_seidel", tau0=None, max_iter=5)
    assert handler.get_section("verify")["gne_tol"] == 1e-4
    assert handler.get_section("gauss_seidel")["tau0"] == 0.1
    assert handler.get_section("gauss_seidel")["max_iter"] == 5


def test_save_and_generate(tmp_path):
    """Test writing the configuration back as YAML"""
    handler = ConfigHandler()
    handler.override("bench", workers=4)
    out = tmp_path / "saved.yaml"
    handler.save_config(str(out))
    saved = yaml.safe_load(out.read_text(encoding="utf-8"))
    assert saved["bench"]["workers"] == 4

    generated = tmp_path / "nested" / "default.yaml"
    generate_default_config(str(generated))
    assert yaml.safe_load(generated.read_text(encoding="utf-8")) == ConfigHandler.DEFAULT_CONFIG


def test_pop_acceptance_defaults():
    """Test the acceptance tolerances and the shipped YAML against the defaults"""
    pop = ConfigHandler().get_section("pop")
    assert (pop["feastol"], pop["opt_tol"], pop["order_max"]) == (1e-8, 1e-6, None)
    assert pop["polish"] and pop["univariate_fallback"]
    assert "accept_tol" not in pop
    assert ConfigHandler().get_section("gauss_seidel")["ball_radius"] is None

    shipped = ConfigHandler(str(Path(__file__).resolve().parent.parent / "configs" / "default_config.yaml"))
    assert shipped.get_section("pop") == pop
