#!/usr/bin/env python3
# -*- coding: utf-8 -*-

"""
Text reports for computed and hand-written certificates.
"""

from typing import List

from gpg_certifier.certificate import Q0, CertifyResult
from gpg_certifier.manual import ManualCheckReport
from poly_core import Polynomial

# Terms of reconstructed multipliers below this magnitude are not printed
_TERM_CUTOFF = 1e-6


def _rounded(poly: Polynomial, cutoff: float = _TERM_CUTOFF) -> Polynomial:
    return Polynomial({m: c for m, c in poly.terms.items() if abs(c) > cutoff}, poly.layout)


def format_certificate(result: CertifyResult) -> List[str]:
    """
    Human-readable certificate: P to 6 decimals, the multipliers, the
    identity residuals and the Gram eigenvalue minima.
    """
    lines = [f"status: {result.status}"]
    if result.orders_tried:
        lines.append(f"degrees tried: {', '.join(str(2 * d) for d in result.orders_tried)}")
    if not result.shared_constraints:
        lines.append("warning: players' constraint lists differ")
    if result.reason:
        lines.append(f"reason: {result.reason}")
    cert = result.certificate
    if cert is None:
        return lines

    lines.append(f"degree: {cert.degree}{' (suboptimal SDP solve)' if cert.suboptimal else ''}")
    lines.append(f"P(x) = {_rounded(cert.potential).to_text(precision=6)}")
    n_players = len(cert.residuals)
    for i in range(1, n_players + 1):
        for kind in (0, 1):
            q = cert.multipliers.get((i, kind))
            if q is not None:
                lines.append(f"q{i},{kind} = {_rounded(q).to_text(precision=6)}")
        eig_min = min((v for (p, _, _), v in cert.min_eigenvalues.items() if p == i), default=float("nan"))
        lines.append(f"player {i}: identity residual {cert.residuals[i - 1]:.3e}, min Gram eigenvalue {eig_min:.3e}")
    blocks = sum(1 for key in cert.grams if key[1] == Q0)
    lines.append(f"gram blocks: {len(cert.grams)} ({blocks} multiplying Delta f)")
    return lines


def format_manual(report: ManualCheckReport) -> List[str]:
    lines = [f"identity: {'holds' if report.identity_holds else 'fails'} (max residual {report.max_residual:.3e})"]
    for check in report.players:
        line = f"player {check.player}: residual {check.residual:.3e}, samples {check.samples}"
        if check.samples:
            line += f", min p0 {check.min_p0:.3e}, min p1 {check.min_p1:.3e}"
        if check.note:
            line += f" ({check.note})"
        lines.append(line)
    lines.append(f"nonnegativity on samples: {'ok' if report.nonnegative_on_samples else 'violated'}")
    return lines
