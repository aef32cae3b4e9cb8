"""Finite-order automorphisms of the Heisenberg algebra h3, the gradings they
induce, and the left-invariant metrics adapted to those gradings."""

from .errors import HeisError
from .scalars import QuadExt, format_scalar, parse_scalar
from .linalg import Mat3
from .heis import (BASIS, IDENTITY, X1, X2, X3, Automorphism, bracket, commutes, compose,
                   conjugate, inverse, make_automorphism, order_of)
from .families import (FamilyTag, Identity, Tau1, Tau2, Tau3, Tau4, Tau5, Tau5Prime, Tau6,
                       classify_automorphism, classify_involution, make_family,
                       solve_order3_constraints, tau5_square_relation)
from .groups import (AutSubgroup, abelian_type, build_gamma5, build_gamma6k, build_gamma7,
                     build_gamma8, build_sigma3, build_subgroup, commutation_predicted)
from .gradings import Grading, canonical_z22_grading, grading_from_subgroup, transport_grading
from .conjugation import (commuting_involutions, conjugator_gamma7_to_gamma8, find_conjugator,
                          normalize_gamma7)
from .metrics import (BilinearForm, canonical_reduce, check_adaptation, curvature, diagonal_form,
                      flat_form, is_flat, koszul_connection, pullback, sectional)

__version__ = "0.1.0"
