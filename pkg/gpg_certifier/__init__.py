#!/usr/bin/env python3
# -*- coding: utf-8 -*-

"""
Potential game certification package: K_i tuples, the semidefinite
certificate program and checks of hand-written certificates.
"""

from gpg_certifier.ki import KiTuple, build_ki, copy_layout, delta_f, delta_p
from gpg_certifier.certificate import (
    DEFAULT_CERTIFY_CONFIG,
    CertifyResult,
    GpgCertificate,
    GpgCertifier,
    certify,
    default_order,
    shared_constraints,
)
from gpg_certifier.manual import ManualCertificates, ManualCheckReport, PlayerCheck, check_manual, manual_certificate
from gpg_certifier.report import format_certificate, format_manual

__all__ = [
    'KiTuple',
    'build_ki',
    'copy_layout',
    'delta_f',
    'delta_p',
    'DEFAULT_CERTIFY_CONFIG',
    'CertifyResult',
    'GpgCertificate',
    'GpgCertifier',
    'certify',
    'default_order',
    'shared_constraints',
    'ManualCertificates',
    'ManualCheckReport',
    'PlayerCheck',
    'check_manual',
    'manual_certificate',
    'format_certificate',
    'format_manual',
]
