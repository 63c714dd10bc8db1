"""Local unitary invariants for bipartite and tripartite quantum states."""
from .classes import (MembershipReport, check_class, check_gamma0, check_gamma_mixed3,
                      check_gamma_pure3)
from .invariants import (InvariantSet, compute_invariants, invariants_bipartite,
                         invariants_mixed3, invariants_pure3)
from .judge import (Verdict, WitnessResult, compare_invariants, decide_equivalence,
                    find_lu_witness, negativity)
from .linalg import SpectralData, commutator, eig_hermitian, kron, random_unitary, svd, trace_power
from .states import (MixedState, PureState, ReducedFamily, apply_local_unitary, mixed3_hierarchy,
                     partial_trace, permute_subsystems, reduced_family_bipartite,
                     reduced_family_pure3,
                     schmidt_coefficients, spectral_branches, unfold, unfold_bipartite)
from .zoo import FamilySpec, build_gamma0, build_tripartite_mixed, build_tripartite_pair

__version__ = "0.1.0"
