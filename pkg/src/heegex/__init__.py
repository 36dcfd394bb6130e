"""Exact certification of extremal primitive Heegner divisors on orthogonal modular varieties."""
from .lattice import (DiscriminantElement, DiscriminantGroup, EmptyDivisor, HeegnerIndex, InvalidIndex,
                      Lattice, LatticeError, LatticeSyntaxError, RepresentativeNotFound, k3_class, k3_lattice,
                      parse_lattice, primitive_representative, unimodular_lattice)
from .eisenstein import (EisensteinCache, EisensteinTable, HalfIntegerWeight, brute_force_local_density,
                         eisenstein_coefficient, eisenstein_table)
from .theta import theta_negdef, theta_rank1
from .criteria import (Certificate, ExtremalCertified, FormalDivisorCombination, Inconclusive, check_fast_bound,
                       check_full_degree, check_k3, check_simple, k3_nonempty, run_ladder)

__version__ = "0.1.0"

__all__ = [
    "Lattice", "LatticeError", "LatticeSyntaxError", "parse_lattice", "DiscriminantGroup",
    "DiscriminantElement", "HeegnerIndex", "InvalidIndex", "EmptyDivisor", "RepresentativeNotFound",
    "primitive_representative", "k3_lattice", "k3_class", "unimodular_lattice",
    "HalfIntegerWeight", "EisensteinCache", "EisensteinTable", "eisenstein_coefficient", "eisenstein_table",
    "brute_force_local_density", "theta_rank1", "theta_negdef",
    "Certificate", "ExtremalCertified", "Inconclusive", "FormalDivisorCombination", "check_fast_bound",
    "check_simple", "check_full_degree", "run_ladder", "check_k3", "k3_nonempty",
]
