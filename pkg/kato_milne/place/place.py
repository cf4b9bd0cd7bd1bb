"""
Abstract Base Class for places of F(x). Each subclass implements a kind of place.
"""

from abc import ABC, abstractmethod


class Place(ABC):
    """Abstract base class for a place of the field F(x) at a given tower level.

    Labels: ground variables t_i have labels 1..level-1, x has label level,
    and the uniformizer has label level+1, so it is the largest.
    """

    def __new__(cls, *args, **kwargs):
        """Prevent direct instantiation of Place"""
        if cls is Place:
            raise TypeError("Cannot instantiate abstract class Place")
        return super().__new__(cls)

    def __init__(self, tower, level):
        self.tower = tower
        self.level = level
        # per-place memoization; results never depend on its state
        self._cache = {}

    @property
    def label_x(self):
        return self.level

    @property
    def label_pi(self):
        return self.level + 1

    @property
    def ground_labels(self):
        return self.tower.labels(self.level - 1)

    @property
    def local_labels(self):
        return self.residue_labels + (self.label_pi,)

    def power(self, exponent):
        """uniformizer ** exponent as an element of F(x)"""
        return self.uniformizer ** exponent

    def dlog_map(self, label):
        """dlog of a global basis element written in the local basis"""
        key = ('dlog', label)
        if key not in self._cache:
            gen = self.tower.gen(label)
            self._cache[key] = {
                local: value / gen for local, value in self.dt_map(label).items()
            }
        return self._cache[key]

    def residue_dt_map(self, label):
        """d of a global basis element written in the residue 2-basis"""
        key = ('residue_dt', label)
        if key not in self._cache:
            self._cache[key] = {
                local: self.reduce_element(value)
                for local, value in self.dt_map(label).items()
                if local != self.label_pi
            }
        return self._cache[key]

    def residue_field(self):
        """The residue field as a form field"""
        if 'residue_field' not in self._cache:
            self._cache['residue_field'] = self._make_residue_field()
        return self._cache['residue_field']

    def __eq__(self, other):
        return isinstance(other, Place) and self.key() == other.key()

    def __hash__(self):
        return hash(self.key())

    def __str__(self):
        return self.text()

    def __repr__(self):
        return f"{type(self).__name__}({self.text()})"

    @property
    @abstractmethod
    def is_infinite(self) -> bool:
        pass

    @property
    @abstractmethod
    def degree(self) -> int:
        pass

    @property
    @abstractmethod
    def is_separable(self) -> bool:
        pass

    @property
    @abstractmethod
    def uniformizer(self):
        pass

    @property
    @abstractmethod
    def residue_labels(self) -> tuple:
        """Labels of the 2-basis of the residue field, sorted"""
        pass

    @abstractmethod
    def key(self) -> tuple:
        pass

    @abstractmethod
    def text(self) -> str:
        pass

    @abstractmethod
    def basis_lift(self, labels):
        """
        Lift of the residue basis monomial t^J to a polynomial

        Args:
            labels: sorted tuple of residue labels

        Returns:
            Poly: the lift
        """
        pass

    @abstractmethod
    def reduce(self, g):
        """
        Split a polynomial as g = h2 + uniformizer * h1 with h2 a digit

        Returns:
            tuple: (h2, h1)
        """
        pass

    @abstractmethod
    def reduce_element(self, a):
        """Residue class of an integral element of F(x), as a digit polynomial"""
        pass

    @abstractmethod
    def dt_map(self, label) -> dict:
        """d of the global basis element with label, in the local dlog basis"""
        pass

    @abstractmethod
    def residue_value(self, digit):
        """Coefficient of the residue field represented by a digit polynomial"""
        pass

    @abstractmethod
    def residue_lift(self, value):
        """Element of F(x) lifting a residue field coefficient"""
        pass

    @abstractmethod
    def _make_residue_field(self):
        pass
