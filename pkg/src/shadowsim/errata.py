"""Deterministic erratum report.

Every finding is computed by an oracle at report time: printed expressions are
hard-coded, the derived side is recomputed, and the verdict is whatever the
residual says.  Nothing here depends on a random stream, so the report is
byte-identical across runs.
"""

from __future__ import annotations

import numpy as np

from .fock import ModeGrid, single_mode_lowering
from .protocols import swap_decomposition, teleport_decomposition
from .register import BellKind
from .waves import ZonePartition, gaussian_packet, zone_coefficients, zone_profile

MATCH_TOL = 1e-12


def _verdict(residual):
    return "match" if residual < MATCH_TOL else "erratum"


def _pair_prefactor_finding():
    printed = np.sqrt(2.0) * np.array([1, 0, 0, 1], dtype=complex)
    implemented = BellKind.PHI_PLUS.amplitudes()
    printed_norm = float(np.linalg.norm(printed))
    return {
        "id": "entangled-pair-prefactor",
        "description": "printed maximally entangled pair carries prefactor "
                       "sqrt(2); a unit-norm state requires 1/sqrt(2)",
        "printed_norm": printed_norm,
        "implemented_norm": float(np.linalg.norm(implemented)),
        "residual": abs(printed_norm - 1.0),
        "verdict": _verdict(abs(printed_norm - 1.0)),
    }


def _resource_mismatch_finding():
    expanded = np.array([1, 0, 0, -1], dtype=complex) / np.sqrt(2.0)
    declared = BellKind.PSI_MINUS.amplitudes()
    dist_declared = float(np.linalg.norm(expanded - declared))
    dist_phi_minus = float(np.linalg.norm(expanded - BellKind.PHI_MINUS.amplitudes()))
    return {
        "id": "teleportation-resource-mismatch",
        "description": "declared teleportation resource is the singlet, but the "
                       "expanded joint state uses (|uu> - |dd>)/sqrt(2)",
        "distance_to_declared_kind": dist_declared,
        "distance_to_phi_minus": dist_phi_minus,
        "residual": dist_declared,
        "verdict": _verdict(dist_declared),
    }


def _teleport_branch_finding():
    report = teleport_decomposition(0.6, 0.8j)
    return {
        "id": "teleportation-branch-flip",
        "description": "printed psi-branch remote states omit the spin flip the "
                       "brute-force Bell expansion produces; phi branches match",
        "branch_residuals": {k.value: report.residuals[k] for k in BellKind},
        "branch_verdicts": {k.value: report.verdicts[k] for k in BellKind},
        "reassembly_residual": report.reassembly_residual,
        "residual": max(report.residuals.values()),
        "verdict": report.verdict,
    }


def _swap_branch_finding():
    report = swap_decomposition()
    return {
        "id": "swap-branch-signs",
        "description": "double-singlet expansion on the middle pair compared "
                       "against the printed outer-pair kinds and signs",
        "branch_residuals": {k.value: report.residuals[k] for k in BellKind},
        "branch_verdicts": {k.value: report.verdicts[k] for k in BellKind},
        "reassembly_residual": report.reassembly_residual,
        "residual": max(report.residuals.values()),
        "verdict": report.verdict,
    }


def _ladder_factor_finding():
    a = single_mode_lowering(4)
    oracle = float(np.real(a.conj().T[2, 1]))  # <2| a-dagger |1> = sqrt(2)
    single = float(np.sqrt(2.0))
    double = 2.0  # factor applied to ket and shadow ket separately
    return {
        "id": "ladder-factor-double-application",
        "description": "printed raising rule multiplies sqrt(n+1) onto the ket "
                       "and its shadow separately; the matrix element fixes a "
                       "single application",
        "matrix_element": oracle,
        "single_application": single,
        "double_application": double,
        "residual": abs(double - oracle),
        "single_application_residual": abs(single - oracle),
        "verdict": _verdict(abs(double - oracle)),
    }


def _zone_expansion_finding():
    grid = gaussian_packet(-8.0, 8.0, 256, sigma=1.0)
    partition = ZonePartition.equal_zones(256, 4)
    c = zone_coefficients(grid, partition)
    profiles = [zone_profile(grid, partition, i) for i in range(4)]
    without = sum(profiles)
    with_c = sum(ci * pi for ci, pi in zip(c, profiles))
    dx = grid.dx
    res_without = float(np.sqrt(np.sum(np.abs(without - grid.psi_primary) ** 2) * dx))
    res_with = float(np.sqrt(np.sum(np.abs(with_c - grid.psi_primary) ** 2) * dx))
    return {
        "id": "zone-expansion-coefficients",
        "description": "printed zone expansion drops the zone coefficients on "
                       "one side; reassembly only works with them",
        "residual_without_coefficients": res_without,
        "residual_with_coefficients": res_with,
        "residual": res_without,
        "verdict": _verdict(res_without),
    }


def build_erratum_report():
    """All findings, recomputed from oracles; deterministic across runs."""
    findings = [
        _pair_prefactor_finding(),
        _resource_mismatch_finding(),
        _teleport_branch_finding(),
        _swap_branch_finding(),
        _ladder_factor_finding(),
        _zone_expansion_finding(),
    ]
    return {
        "finding_count": len(findings),
        "erratum_count": sum(1 for f in findings if f["verdict"] == "erratum"),
        "findings": findings,
    }
