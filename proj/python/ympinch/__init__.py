"""Curvature-pinching stability thresholds for Yang-Mills connections.

Thin wrapper around the C++ core. The heavy lifting (kernel evaluation,
adaptive quadrature, threshold search) releases the GIL.
"""

from ._core import (
    breakpoints,
    find_threshold,
    integral,
    kernel_phi,
    phi_base,
    psi_base,
    rho_delta,
    table1,
    table1_reference,
    unit_sphere_area,
    volume_weight,
)

__all__ = [
    "breakpoints",
    "find_threshold",
    "integral",
    "kernel_phi",
    "phi_base",
    "psi_base",
    "rho_delta",
    "table1",
    "table1_reference",
    "unit_sphere_area",
    "volume_weight",
]
