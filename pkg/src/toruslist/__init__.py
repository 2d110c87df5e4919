"""Explicit 5-list colorings of 6-regular toroidal triangulations T(r, s, t)."""

from .torus import (
    CylinderTriangulation,
    GraphClass,
    TorusTriangulation,
    VertexId,
    build_cylinder,
    build_torus,
    classify,
    flip_automorphism,
    isomorphic_tuples,
    normal_circuit_lengths,
)
from .lists import ListAssignment, check_criteria, residual, verify_coloring
from .solver import SolveOutcome, solve

__all__ = [
    "CylinderTriangulation",
    "GraphClass",
    "ListAssignment",
    "SolveOutcome",
    "TorusTriangulation",
    "VertexId",
    "build_cylinder",
    "build_torus",
    "check_criteria",
    "classify",
    "flip_automorphism",
    "isomorphic_tuples",
    "normal_circuit_lengths",
    "residual",
    "solve",
    "verify_coloring",
]
