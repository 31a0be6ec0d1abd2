"""Exact Kochen-Specker parity proofs on the three-qubit Mermin pentagram."""

__version__ = "0.1.0"

from .pauli import ExactMatrix, PauliObservable, commutes, multiply, observable_from_letters, to_matrix
from .pentagram import Pentagram, build_pentagram, count_sign_assignments, verify_pentagram
from .rays import Octad, Ray, canonicalize, common_eigenbasis, derive_all_rays, reconcile_with_table
from .bases import (
    RelationSet,
    enumerate_orthogonal_octads,
    occurrence_counts,
    paper_relations_rank1,
    verify_completeness,
)
from .parity import (
    IncidenceSystem,
    check_parity_proof,
    from_relations,
    max_satisfiable_contexts,
    search_assignment,
)
from .rank2 import (
    Plane,
    Rank2Proof,
    enumerate_rank2_proofs,
    make_plane,
    paper_rank2_proof,
    verify_rank2_proof,
)
from .hypergraph import PlaneHypergraph, build_hypergraph, export, relabel_planes
