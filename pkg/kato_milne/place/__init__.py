"""
Places of F(x).

Each kind of place is implemented by a subclass of Place:
- FinitePlace: a monic irreducible polynomial p;
- InfinitePlace: the place 1/x.

A place knows its uniformizer, the 2-basis of its residue field, the lift
of that basis to F(x), and how the global differentials dt_i, dx are
written in the local logarithmic basis.
"""

from .place import Place
from .finite_place import FinitePlace
from .infinite_place import InfinitePlace

__all__ = [
    'Place',
    'FinitePlace',
    'InfinitePlace'
]
