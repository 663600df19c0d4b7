"""Workbench for interference-alignment network topologies."""

from ._core import (
    AllianceSpec,
    SpecError,
    TopologyError,
    TopologyMatrix,
    alignment_sets,
    canonical_label,
    column_classes,
    derive_topology,
    dof_report,
    dof_report_for_spec,
    e_max_of,
    is_dof_half_optimal,
    is_maximal_by_definition,
    is_mtm,
    is_mtm_for_dof,
    parse_spec,
    transform_to_mtm,
    validate_spec,
    verify_decodability,
    verify_decodability_for_spec,
    verify_theorems,
    write_spec,
)

__all__ = [
    "AllianceSpec",
    "SpecError",
    "TopologyError",
    "TopologyMatrix",
    "alignment_sets",
    "canonical_label",
    "column_classes",
    "derive_topology",
    "dof_report",
    "dof_report_for_spec",
    "e_max_of",
    "is_dof_half_optimal",
    "is_maximal_by_definition",
    "is_mtm",
    "is_mtm_for_dof",
    "parse_spec",
    "transform_to_mtm",
    "validate_spec",
    "verify_decodability",
    "verify_decodability_for_spec",
    "verify_theorems",
    "write_spec",
]
