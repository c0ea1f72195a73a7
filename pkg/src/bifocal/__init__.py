"""Exact bifocal Grassmann tensors for pairs of linear projections P^k -> P^h1, P^h2."""

from .camera import ProjectionPair, canonical_pair, make_pair, random_pair
from .canon import (CanonicalReduction, Decomposition, act_big_group, decompose_tensor,
                    reduce_to_canonical, transform_tensor)
from .errors import (BifocalError, ConsistencyError, DegenerateError, ExceptionalLocusError,
                     IntersectingCentersError, RankError, ValidationError)
from .exterior import MultiIndex, compound, hodge_tensor, multiindices, perm_sign, plucker
from .gtensor import (GrassmannTensor, Profile, admissible_profiles, build_tensor, evaluate,
                      expected_rank, system_determinant)
from .moduli import (CalGElement, TauPoint, act_calG, preimage_of_plane, psi, psi_oracle,
                     tau_from_pair)
from .ratmat import RatMat, Subspace, det, inverse, kernel_basis, rank_of, rref, span

__version__ = "0.1.0"

__all__ = [
    "ProjectionPair",
    "canonical_pair",
    "make_pair",
    "random_pair",
    "CanonicalReduction",
    "Decomposition",
    "act_big_group",
    "decompose_tensor",
    "reduce_to_canonical",
    "transform_tensor",
    "BifocalError",
    "ConsistencyError",
    "DegenerateError",
    "ExceptionalLocusError",
    "IntersectingCentersError",
    "RankError",
    "ValidationError",
    "MultiIndex",
    "compound",
    "hodge_tensor",
    "multiindices",
    "perm_sign",
    "plucker",
    "GrassmannTensor",
    "Profile",
    "admissible_profiles",
    "build_tensor",
    "evaluate",
    "expected_rank",
    "system_determinant",
    "CalGElement",
    "TauPoint",
    "act_calG",
    "preimage_of_plane",
    "psi",
    "psi_oracle",
    "tau_from_pair",
    "RatMat",
    "Subspace",
    "det",
    "inverse",
    "kernel_basis",
    "rank_of",
    "rref",
    "span",
]
