"""Finite effect algebras, MV-effect algebras and their representation as
Boolean algebras modulo automorphism groups."""

from .bgpairs import (
    BGPair,
    CapExceeded,
    Group,
    NotMvPair,
    build_quotient_mv,
    full_aut,
    mv_pair_verdict,
    phi_preserving_group,
    phi_swap,
    subgroup_closure,
    verify_representation,
)
from .effect import (
    EffectAlgebra,
    NotMvEffect,
    Partition,
    check_congruence,
    find_isomorphism,
    is_mv_effect,
    mv_characterizations,
    quotient,
    riesz_properties,
    validate_effect_algebra,
)
from .order import BoundedLattice, Poset, join_irreducibles, lattice_from_poset
from .rgen import BooleanAlg, chain_representation, phi, rgenerate

__version__ = "0.1.0"

__all__ = [
    "BGPair", "BooleanAlg", "BoundedLattice", "CapExceeded", "EffectAlgebra", "Group",
    "NotMvEffect", "NotMvPair", "Partition", "Poset", "build_quotient_mv", "chain_representation",
    "check_congruence", "find_isomorphism", "full_aut", "is_mv_effect", "join_irreducibles",
    "lattice_from_poset", "mv_characterizations", "mv_pair_verdict", "phi", "phi_preserving_group",
    "phi_swap", "quotient", "rgenerate", "riesz_properties", "subgroup_closure",
    "validate_effect_algebra", "verify_representation",
]
