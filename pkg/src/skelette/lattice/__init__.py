"""Exact lattice algebra: matrices, Smith normal form, polytopes, fans."""

from .fan import Cone, StackyFan, ZERO_CONE, cone_membership, fan_from_json, validate_stacky_fan
from .matrix import IntMatrix
from .polytope import Polytope, lattice_points
from .snf import BACKEND, SmithDecomposition, smith_normal_form

__all__ = ["BACKEND", "Cone", "IntMatrix", "Polytope", "SmithDecomposition",
           "StackyFan", "ZERO_CONE", "cone_membership", "fan_from_json",
           "lattice_points", "smith_normal_form", "validate_stacky_fan"]
