"""Exact polynomial tools for checking presentations of symplectic reductions."""

from .orders import GREVLEX, LEX, MonomialOrder, block
from .poly import Polynomial, VariableRegistry, QQ, ring
from .groebner import (GroebnerBasis, Ideal, ResourceLimitExceeded, buchberger,
                       ideal_membership, normal_form, resource_limits)

__all__ = [
    "GREVLEX", "LEX", "MonomialOrder", "block",
    "Polynomial", "VariableRegistry", "QQ", "ring",
    "GroebnerBasis", "Ideal", "ResourceLimitExceeded", "buchberger",
    "ideal_membership", "normal_form", "resource_limits",
]
