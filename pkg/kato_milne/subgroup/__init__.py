"""
Generator families of H^(m+1)(F(x)).

Each family is implemented by a subclass of SubgroupKind:
- SubgroupL0, SubgroupLd: polynomial coefficients;
- SubgroupSp, SubgroupSpTilde: poles at a single place;
- SubgroupSprime, SubgroupS0: the ramified generators S'_(p,r), S^0_(p,r);
- SubgroupUp, SubgroupUp0: their finite sums.

Families are used by the samplers and by the self tests.
"""

from .subgroup_kind import SubgroupKind, SubgroupSpec
from .subgroup_polynomial import SubgroupL0, SubgroupLd
from .subgroup_pole import SubgroupSp, SubgroupSpTilde
from .subgroup_ramified import SubgroupS0, SubgroupSprime, SubgroupUp, SubgroupUp0
from .subgroup_registry import SubgroupRegistry, subgroup_generator

__all__ = [
    'SubgroupKind',
    'SubgroupSpec',
    'SubgroupL0',
    'SubgroupLd',
    'SubgroupSp',
    'SubgroupSpTilde',
    'SubgroupSprime',
    'SubgroupS0',
    'SubgroupUp',
    'SubgroupUp0',
    'SubgroupRegistry',
    'subgroup_generator'
]
