"""Topological degree of polar maps and rational maps of projective space over
finite fields, computed through the symmetric and Rees algebras of the base ideal."""

from .errors import *  # noqa: F401,F403
from .fields import FieldCtx, FieldElement, embed, make_field
from .poly import MonomialOrder, Polynomial, PolyRing, jacobian, parse_polynomial, poly_gcd
from .groebner import (GroebnerBasis, PresentationMatrix, buchberger, free_resolution,
                       hilbert_series, syzygy_module)
from .ideals import (Ideal, PointP, fitting_ideal, ideal_quotient, intersect, local_length,
                     projective_degree, rational_points, saturate)
from .maps import RationalMap, make_map, polar_map
from .blowup import (blowup_model, is_linear_type, lci_defect, rees_ideal, symmetric_algebra_ideal,
                     torsion_degree, torsion_ideal)
from .invariants import (Classification, InvariantReport, chern_classes, classical_local_invariants,
                         classify_relation_bundle, full_report, is_dominant, is_homaloidal, milnor,
                         milnor_local, naive_degrees, tjurina, tjurina_local, topological_degree,
                         verify_inverse)

__version__ = "0.1.0"
