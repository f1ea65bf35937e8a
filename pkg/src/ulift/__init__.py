"""Multiplicative Borcherds lifts on unitary groups U(1, m).

Exact arithmetic in an imaginary quadratic field, hermitian lattices with
their trace-form view, Weil representation data, Heegner divisors, Weyl
chambers, truncated product expansions with divisor and boundary data, and
the residue-pairing obstruction checks.
"""

from .errors import (ConvergenceError, DomainError, FieldZeroDivision,
                     ValidationError, WeylVectorRequired)
from .field import (Discriminant, FieldElement, delta, embed, from_pair,
                    in_inverse_different, one, zeta, zeta_data, zero)
from .lattice import (CuspData, DiscriminantGroup, HermitianLattice, ZView,
                      diagonal_lattice, dual_and_discriminant,
                      enumerate_norm_vectors, find_isotropic_pair,
                      hyperbolic_basis, hyperbolic_plane,
                      hyperbolic_plane_cusp, trace_gram, width)
from .modforms import (VVForm, WeilRep, jm_form, realizability_check,
                       residue_pair, rho_of, scalar_builder, slash_check,
                       weil_matrices)
from .geometry import (HeisenbergElement, SiegelPoint, TubePoint,
                       boundary_limit_point, cusp_neighborhood_contains,
                       embed_alpha, heisenberg_act, heisenberg_compose,
                       numerics, siegel_norm, translation_width, xl_yl, z_of)
from .divisors import (HeegnerIndex, WeylChamber, WeylVector,
                       chamber_condition, chamber_of, cusp_chamber,
                       heegner_points, pullback_consistency, weyl_vector)
from .lift import (BorcherdsProduct, EvaluationResult, automorphy_check,
                   boundary_behavior, boundary_value, build, divisor_of,
                   evaluate, fourier_jacobi_coefficient, product_multiset,
                   vanishing_probe)
from .obstruction import (FormalDivisorSeries, duality_relation_check,
                          realizable_series)

__all__ = [name for name in dir() if not name.startswith("_")]
__version__ = "0.1.0"
