"""Spectra of two-dimensional Dirac operators with delta-shell interactions on curves."""

import json

from ._core import (
    CertificateInput,
    CertificateResult,
    Curve,
    EigenScanResult,
    GapEigenvalue,
    InteractionParams,
    Interval,
    OmegaStar,
    SchrodingerEigenvalue,
    SpectrumReport,
    bessel_k,
    bracket,
    certify,
    cz_matrix,
    essential_spectrum,
    find_omega_star,
    green_kernel,
    identity_defect,
    is_confined,
    is_critical,
    isospectral_partner,
    perturbed_line,
    scan,
    schrodinger_eigenvalues,
    selfcheck,
    smoothed_corner,
    straight_line,
    z_pm,
)
from ._core import run_config as _run_config


def run(config):
    """Run a CLI job from a dict (or JSON string); returns (exit_code, log)."""
    if not isinstance(config, str):
        config = json.dumps(config)
    return _run_config(config)


__all__ = [name for name in dir() if not name.startswith("_") and name != "json"]
