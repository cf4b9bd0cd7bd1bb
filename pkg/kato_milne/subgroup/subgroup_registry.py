"""
Registry for generator families.
It acts as a factory and implements validation.
"""

from .subgroup_kind import SubgroupKind
from .subgroup_polynomial import SubgroupL0, SubgroupLd
from .subgroup_pole import SubgroupSp, SubgroupSpTilde
from .subgroup_ramified import SubgroupS0, SubgroupSprime, SubgroupUp, SubgroupUp0
from ..exceptions import ConstraintViolation


class SubgroupRegistry:
    """Registry for creating and validating generator families"""

    _types = {
        'L0': SubgroupL0,
        'Ld': SubgroupLd,
        'Sp': SubgroupSp,
        'Sp_tilde': SubgroupSpTilde,
        'Sprime_pr': SubgroupSprime,
        'S0_pr': SubgroupS0,
        'Up': SubgroupUp,
        'Up0': SubgroupUp0,
    }

    def __new__(cls, *args, **kwargs):
        """Prevent instantiation of SubgroupRegistry"""
        raise TypeError("Cannot instantiate SubgroupRegistry")

    @classmethod
    def create(cls, kind: str) -> SubgroupKind:
        """
        Create the family object for a kind

        Raises:
            KeyError: If kind is not supported
        """
        if not cls.validate(kind):
            raise KeyError(f"Unsupported subgroup kind: {kind}")
        return cls._types[kind]()

    @classmethod
    def validate(cls, kind: str) -> bool:
        return kind in cls._types

    @classmethod
    def kinds(cls):
        return list(cls._types)


def subgroup_generator(spec, params):
    """
    The generator of a family named by spec

    Args:
        spec (SubgroupSpec): the family and its place, r, d
        params (dict): generator data

    Returns:
        CohomClass: the generator

    Raises:
        ConstraintViolation: naming the violated clause
    """
    if not SubgroupRegistry.validate(spec.kind):
        raise ConstraintViolation(f"Unknown subgroup kind: {spec.kind}")
    return SubgroupRegistry.create(spec.kind).generator(spec, params)
