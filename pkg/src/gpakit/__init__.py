"""gpakit: exact-arithmetic verification for graph planar algebras.

Builds graph planar algebras over algebraic number fields, manipulates
bi-invertible connections on principal-graph pairs, solves for lowest-weight
and flat elements, and runs a bounded principal-graph enumeration in a given
index window.
"""

from .numfield import (
    CyclotomicExtension,
    FieldElement,
    NumberField,
    field_create,
    sqrt_in_field,
)
from .bigraph import Bigraph, BigraphPair, FourPartiteGraph, parse_bigraph, parse_pair

__all__ = [
    "CyclotomicExtension",
    "FieldElement",
    "NumberField",
    "field_create",
    "sqrt_in_field",
    "Bigraph",
    "BigraphPair",
    "FourPartiteGraph",
    "parse_bigraph",
    "parse_pair",
]
