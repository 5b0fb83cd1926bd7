"""Convex geometries of stem size 2: axioms, traces, edge-shelling recognition,
forbidden-minor catalogs and simplicial shellings of chordal graphs."""

from .circuits import (
    AxiomViolation,
    CircuitFamily,
    ClosureSystem,
    RootedSet,
    are_isomorphic,
    canonical_form,
    check_rooted_axioms,
    circuits_of_closure_system,
    closure,
    convex_sets,
    extreme,
    is_convex_geometry_oracle,
    rooted,
    trace,
)
from .recognition import MINOR_TYPES, Certificate, recognize
from .trees import LabeledTree, contract, edge_path, edge_shelling_circuits, vertex_shelling_circuits

__all__ = [
    "AxiomViolation",
    "Certificate",
    "CircuitFamily",
    "ClosureSystem",
    "LabeledTree",
    "MINOR_TYPES",
    "RootedSet",
    "are_isomorphic",
    "canonical_form",
    "check_rooted_axioms",
    "circuits_of_closure_system",
    "closure",
    "contract",
    "convex_sets",
    "edge_path",
    "edge_shelling_circuits",
    "extreme",
    "is_convex_geometry_oracle",
    "recognize",
    "rooted",
    "trace",
    "vertex_shelling_circuits",
]
