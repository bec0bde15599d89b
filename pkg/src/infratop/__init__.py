"""Finite infra-topological spaces: operators, generalized open classes,
a theorem checker and an exhaustive enumerator."""

from .classes import ClassId, SpaceTables, classify, family_of, is_member
from .setcore import GroundSet
from .space import InfraSpace, ValidationError, complete, validate

__all__ = [
    "ClassId", "GroundSet", "InfraSpace", "SpaceTables", "ValidationError",
    "classify", "complete", "family_of", "is_member", "validate",
]
__version__ = "0.1.0"
