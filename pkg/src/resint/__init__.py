"""Residual intersections of 2x2 determinantal ideals, checked by exact computation.

The package carries its own commutative algebra kernel (polynomials over a
prime field, Groebner bases of submodules, ideal operations, minimal free
resolutions, Ext and local cohomology through graded local duality) and a
verification harness that compares computed invariants with predicted ones.
"""

__version__ = "0.1.0"

from .field import CoefficientField, DEFAULT_PRIME
from .ring import PolyRing, Polynomial, TermOrder
from .groebner import Budget, GroebnerBasis, GroebnerBudgetExceeded, groebner_basis, normal_form
from .hilbert import HilbertSeries
from .ideals import (
    GradedIdeal,
    eliminate,
    ideal_intersection,
    ideal_power,
    ideal_product,
    ideal_quotient,
    ideal_saturation,
    ideal_sum,
    krull_dim_codim,
)
from .resolve import BettiTable, FreeResolution, ModulePresentation, depth_and_pd, minimal_resolution, regularity
from .homol import canonical_module, ext_module, hom_module, local_cohomology_profile, unmixedness_test

__all__ = [
    "__version__",
    "CoefficientField",
    "DEFAULT_PRIME",
    "PolyRing",
    "Polynomial",
    "TermOrder",
    "Budget",
    "GroebnerBasis",
    "GroebnerBudgetExceeded",
    "groebner_basis",
    "normal_form",
    "HilbertSeries",
    "GradedIdeal",
    "eliminate",
    "ideal_intersection",
    "ideal_power",
    "ideal_product",
    "ideal_quotient",
    "ideal_saturation",
    "ideal_sum",
    "krull_dim_codim",
    "BettiTable",
    "FreeResolution",
    "ModulePresentation",
    "depth_and_pd",
    "minimal_resolution",
    "regularity",
    "canonical_module",
    "ext_module",
    "hom_module",
    "local_cohomology_profile",
    "unmixedness_test",
]
