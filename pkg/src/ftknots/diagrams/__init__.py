"""Chord diagrams, Jacobi diagrams and the Hamiltonian weight system mod 2."""

from .chord import (
    DEGREE_GUARD,
    ChordDiagram,
    IntersectionGraph,
    canonicalize,
    enumerate_chord_diagrams,
    four_t_relators,
    ham,
    hamiltonian_count,
    intersection_graph,
    is_separated,
)
from .jacobi import (
    JACOBI_GUARD,
    DiagramSumMod2,
    JacobiDiagram,
    enumerate_jacobi,
    haired_tetrahedron,
    insulated_vertices,
    is_good_vertex,
    parse_jacobi,
    read_jacobi,
    stu_reduce,
    wheel,
)

__all__ = [
    "DEGREE_GUARD",
    "JACOBI_GUARD",
    "ChordDiagram",
    "DiagramSumMod2",
    "IntersectionGraph",
    "JacobiDiagram",
    "canonicalize",
    "enumerate_chord_diagrams",
    "enumerate_jacobi",
    "four_t_relators",
    "haired_tetrahedron",
    "ham",
    "hamiltonian_count",
    "insulated_vertices",
    "intersection_graph",
    "is_good_vertex",
    "is_separated",
    "parse_jacobi",
    "read_jacobi",
    "stu_reduce",
    "wheel",
]
