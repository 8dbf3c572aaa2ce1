"""Separability by elementary submodels in small ordered structures."""

from .catalog import STRUCTURE_IDS, definable_set, get_structure
from .closure import acl, dcl, relativizer
from .logic import SIGNATURES, format_formula, parse_formula
from .points import parse_point
from .separability import SeparabilityQuery, check

__version__ = "0.1.0"

__all__ = [
    "STRUCTURE_IDS", "SIGNATURES", "SeparabilityQuery", "acl", "check", "dcl", "definable_set",
    "format_formula", "get_structure", "parse_formula", "parse_point", "relativizer",
]
