"""Entanglement witnesses for bipartite d x d states."""

from ._ewit import (
    DimensionError,
    DomainError,
    EwitError,
    ImaginaryResidueError,
    IoError,
    NotPsdError,
    SymmetryError,
    choi_state,
    correlation_matrix,
    detection_closed_form,
    detection_value,
    horodecki_a,
    horodecki_alpha,
    partial_transpose,
    ppt_bound,
    random_product_state,
    scan_choi,
    seesaw_min,
    singular_values,
    upb_tiles,
    validate_density,
    witness_coefficients,
    witness_matrix,
)

__all__ = [name for name in dir() if not name.startswith("_")]
