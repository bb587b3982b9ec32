"""Certified versions of the constructive arguments: frames, transporters, walks."""

from .case2 import case2_gamma
from .frames import is_orthonormal, is_unitary, orthonormal_complete
from .identities import exhaustive_identity_check, verify_lemma_main_identities
from .quadruple import isotropic_quadruple_solve
from .transport import (
    TransportCertificate,
    transport_cliques,
    transport_isotropic,
    transport_pair_nonorthogonal,
    transport_pair_orthogonal,
)
from .walks import WalkCertificate, equal_det_walk

__all__ = [
    "TransportCertificate",
    "WalkCertificate",
    "case2_gamma",
    "equal_det_walk",
    "exhaustive_identity_check",
    "is_orthonormal",
    "is_unitary",
    "isotropic_quadruple_solve",
    "orthonormal_complete",
    "transport_cliques",
    "transport_isotropic",
    "transport_pair_nonorthogonal",
    "transport_pair_orthogonal",
    "verify_lemma_main_identities",
]
