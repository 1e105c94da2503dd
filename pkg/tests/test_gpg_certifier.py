#!/usr/bin/env python3
# -*- coding: utf-8 -*-

"""
Tests of the K_i construction, hand-written certificates and the
certificate program.
"""

import pytest

from exceptions import InputError, UnknownBuiltinError
from gpg_certifier import (
    CertifyResult,
    GpgCertifier,
    ManualCertificates,
    build_ki,
    certify,
    check_manual,
    copy_layout,
    default_order,
    delta_f,
    delta_p,
    format_certificate,
    format_manual,
    manual_certificate,
    shared_constraints,
)
from instance_model import builtin
from poly_core import Polynomial


def test_copy_layout_appends_player_block():
    """Test the (x, y_i) layout of player 1 of ex4.5"""
    inst = builtin("ex4.5")
    layout = copy_layout(inst, 1)
    assert layout.dims == (2, 1, 2)
    assert copy_layout(inst, 2).dims == (2, 1, 1)


def test_delta_f():
    """Test f_i(y_i, x_-i) - f_i(x) on ex4.3"""
    inst = builtin("ex4.3")
    # f_1 = x1 + x2, point (x1, x2, y1)
    assert delta_f(inst, 1).eval([1.0, 5.0, 3.0]) == pytest.approx(2.0)
    # f_2 = -x1 x2, point (x1, x2, y2)
    assert delta_f(inst, 2).eval([2.0, 1.0, 4.0]) == pytest.approx(-6.0)

    x1 = Polynomial.variable(inst.layout, 1, 1)
    assert delta_p(x1 ** 2, inst, 1).eval([1.0, 0.0, 3.0]) == pytest.approx(8.0)
    assert delta_p(x1 ** 2, inst, 2).is_zero()


def test_build_ki():
    """Test the defining tuple: 1, constraints at x and at y_i, then Delta f_i"""
    inst = builtin("ex4.3")
    ki = build_ki(inst, 1)
    n_constraints = len(inst.player(1).constraints)
    assert ki.m == 2 * n_constraints + 1
    assert ki.labels[0] == "1"
    assert ki.labels[-1] == "df"
    assert not ki.has_equalities
    assert ki.polys[0].constant_term == 1.0

    with_eq = build_ki(builtin("ex4.5"), 1)
    assert with_eq.has_equalities
    assert "-g6(x)" in with_eq.labels


def test_default_order_and_shared_screen():
    assert default_order(builtin("ex4.3")) == 2
    assert default_order(builtin("ex4.5")) == 3
    assert shared_constraints(builtin("ex4.3"))
    assert not shared_constraints(builtin("intro-1.4"))


@pytest.mark.parametrize("name", ["ex4.3", "ex4.4", "ex4.5", "ex5.2i"])
def test_manual_certificates_satisfy_identity(name):
    """Test P(y_i, x_-i) - P(x) == (p_i0 + 1) Delta f_i + p_i1 on coefficients"""
    inst = builtin(name)
    potential, multipliers = manual_certificate(name, inst)
    report = check_manual(inst, potential, multipliers, {"samples": 200})
    assert report.max_residual <= 1e-10
    assert report.identity_holds
    assert report.passed


def test_manual_sampling_on_ki():
    """Test that sampling finds points of K_i and the multipliers stay nonnegative"""
    inst = builtin("ex4.3")
    potential, multipliers = manual_certificate("ex4.3", inst)
    report = check_manual(inst, potential, multipliers, {"samples": 100, "seed": 3})
    first = report.players[0]
    assert first.samples == 100
    assert first.min_p0 >= 0.0
    assert first.min_p1 >= 0.0
    assert report.nonnegative_on_samples

    lines = format_manual(report)
    assert lines[0].startswith("identity: holds")
    assert lines[-1] == "nonnegativity on samples: ok"


def test_manual_sampling_skipped_with_equalities():
    inst = builtin("ex4.5")
    potential, multipliers = manual_certificate("ex4.5", inst)
    report = check_manual(inst, potential, multipliers)
    assert report.players[0].samples == 0
    assert "equality" in report.players[0].note


def test_wrong_potential_fails():
    """Test that a potential missing a term breaks the identity"""
    inst = builtin("ex4.3")
    _, multipliers = manual_certificate("ex4.3", inst)
    x1 = Polynomial.variable(inst.layout, 1, 1)
    report = check_manual(inst, x1 ** 3 + x1, multipliers, {"samples": 10})
    assert not report.identity_holds
    assert not report.passed
    assert format_manual(report)[0].startswith("identity: fails")


def test_unknown_manual_certificate():
    """Test the registry lookup error"""
    assert "ex4.3" in ManualCertificates.names()
    with pytest.raises(UnknownBuiltinError):
        manual_certificate("pollution", builtin("pollution"))


def test_invalid_order():
    with pytest.raises(InputError):
        GpgCertifier().solve(builtin("ex4.3"), order=0)


def test_degree_option():
    """Test that the degree option is read as 2d"""
    assert GpgCertifier({"degree": 6}).degree == 6
    assert GpgCertifier().degree is None


def test_certificate_needs_optimal_sdp():
    """Test that a certificate from an unfinished SDP solve is rejected"""
    certifier = GpgCertifier({"retries": 1}, sdp_config={"max_iter": 2, "farkas": False})
    result = certifier.solve(builtin("ex4.3"))
    assert not result.certified
    assert result.status == "NotCertified"
    assert result.certificate is not None and result.certificate.suboptimal
    assert result.reason.startswith("SDP ended with MaxIter")


def test_format_failed_result():
    result = CertifyResult(certified=False, reason="SDP infeasible", orders_tried=[2, 3])
    assert result.status == "NotCertified"
    assert format_certificate(result) == ["status: NotCertified", "degrees tried: 4, 6", "reason: SDP infeasible"]


@pytest.mark.slow
@pytest.mark.parametrize("name", ["ex4.3", "ex4.6"])
def test_certify_catalog_games(name):
    """Test the certificate program on known potential games"""
    result = certify(builtin(name), config={"retries": 1})
    assert result.certified
    cert = result.certificate
    assert not cert.suboptimal
    assert cert.max_residual <= 1e-6
    assert cert.min_eigenvalue >= -1e-6
    lines = format_certificate(result)
    assert lines[0] == "status: Certified"
    assert any(line.startswith("P(x) = ") for line in lines)
