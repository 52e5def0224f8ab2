"""Exact combinatorial tools for equivariant LS-category and topological complexity.

Simplicial complexes and their cohomology, moment-angle complexes and the
ring H*(Z_K), finite group actions with their orbit diagrams, and an
interval engine that combines all of these into bounds.
"""

__version__ = "0.1.0"

from .bounds import Bound, Derivation, Fact, Interval, Quantity, Session, parse_quantity
from .errors import BudgetError, EqtcError, InputError, InvalidActionError, ParseError, RingAxiomError
from .linalg import Field
from .moment_angle import MomentAngleProfile, cat_torus, k_matrix, profile, tc_upper_bound, zk_betti
from .orbit import GAction, PermGroup, orbit_classes, quotient_complex, validate_action
from .ring import GradedRing, build_ring, cup_length, zcl
from .simplicial import SimplicialComplex, load_complex, parse_complex, reduced_cohomology

__all__ = [
    "Bound", "BudgetError", "Derivation", "EqtcError", "Fact", "Field", "GAction", "GradedRing",
    "InputError", "Interval", "InvalidActionError", "MomentAngleProfile", "ParseError", "PermGroup",
    "Quantity", "RingAxiomError", "Session", "SimplicialComplex", "build_ring", "cat_torus",
    "cup_length", "k_matrix", "load_complex", "orbit_classes", "parse_complex", "parse_quantity",
    "profile", "quotient_complex", "reduced_cohomology", "tc_upper_bound", "validate_action", "zcl",
    "zk_betti",
]
