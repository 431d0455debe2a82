"""Adjunction lower bounds for the minimal genus on b+ = 1 cohomology algebras."""
from .adjunction import (
    AdjunctionError, AdjunctionVerdict, HWitness, c_genus, default_bound, h_bruteforce,
    is_adjunction_class,
)
from .algebra import (
    AlgebraDescriptor, AlgebraError, CaseTag, classify_case, lefschetz_reduce, modified_euler,
    two_chi_three_sigma,
)
from .closedform import HSign, c_zero, h_closed, h_lower_bound, sign_class
from .lattice import (
    Even, Hyperbolic, IntersectionForm, LatticeError, Odd, Vform, is_characteristic, make_form,
    norm, pair, signature,
)
from .reduction import ReductionTrace, e_omega, is_reduced, reduce, wall_vector
from .sphere import SphereVerdict, sphere_check

__version__ = "0.1.0"

__all__ = [
    "AdjunctionError", "AdjunctionVerdict", "HWitness", "c_genus", "default_bound", "h_bruteforce",
    "is_adjunction_class",
    "AlgebraDescriptor", "AlgebraError", "CaseTag", "classify_case", "lefschetz_reduce",
    "modified_euler", "two_chi_three_sigma",
    "HSign", "c_zero", "h_closed", "h_lower_bound", "sign_class",
    "Even", "Hyperbolic", "IntersectionForm", "LatticeError", "Odd", "Vform", "is_characteristic",
    "make_form", "norm", "pair", "signature",
    "ReductionTrace", "e_omega", "is_reduced", "reduce", "wall_vector",
    "SphereVerdict", "sphere_check",
]
