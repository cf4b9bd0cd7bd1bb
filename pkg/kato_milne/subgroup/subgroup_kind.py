"""
Abstract Base Class for generator families. Each subclass implements a family.
"""

from abc import ABC, abstractmethod

from ..exceptions import ConstraintViolation
from ..forms import LogForm, TowerField, dlog_expand
from ..polyring import Poly


class SubgroupSpec:
    """A generator family with its parameters: place, r and d as applicable"""

    def __init__(self, kind, tower, level=None, place=None, r=None, d=None):
        self.kind = kind
        self.tower = tower
        self.place = place
        if level is None:
            level = place.level if place is not None else tower.top
        self.level = level
        self.r = r
        self.d = d

    def __repr__(self):
        place = self.place.text() if self.place is not None else None
        return f"SubgroupSpec({self.kind}, place={place}, r={self.r}, d={self.d})"


class SubgroupKind(ABC):
    """Abstract base class for a family of generating classes of H^(m+1)(F(x))"""

    # Name used by the registry
    name = None

    def __new__(cls, *args, **kwargs):
        """Prevent direct instantiation of SubgroupKind"""
        if cls is SubgroupKind:
            raise TypeError("Cannot instantiate abstract class SubgroupKind")
        return super().__new__(cls)

    @abstractmethod
    def validate(self, spec, params) -> None:
        """
        Check spec and params against the definition of the family

        Raises:
            ConstraintViolation: naming the violated clause
        """
        pass

    @abstractmethod
    def build(self, spec, params) -> LogForm:
        """Representative of the generator; params are already validated"""
        pass

    def generator(self, spec, params):
        """
        Build a generator of the family

        Args:
            spec (SubgroupSpec): family and parameters
            params (dict): generator data, see each family

        Returns:
            CohomClass: the generator
        """
        from ..cohomology import CohomClass
        self.validate(spec, params)
        return CohomClass(self.build(spec, params))

    def fail(self, clause):
        raise ConstraintViolation(f"Subgroup '{self.name}': {clause}")

    # helpers shared by the families

    def field(self, spec):
        return TowerField(spec.tower, spec.level)

    def poly(self, spec, value):
        """Coerce an int, an element or a Poly to a polynomial in x"""
        if isinstance(value, Poly):
            return value
        if isinstance(value, int):
            return Poly.constant(spec.tower, spec.level, value)
        try:
            return Poly.from_element(spec.tower, value, spec.level)
        except Exception:
            self.fail(f"{spec.tower.format(value)} is not a polynomial in x")

    def require_place(self, spec, finite=True):
        if spec.place is None:
            self.fail("a place is required")
        if finite and spec.place.is_infinite:
            self.fail("a finite place is required")

    def require_labels(self, labels, allowed, size=None, what="I"):
        labels = tuple(labels)
        if len(set(labels)) != len(labels):
            self.fail(f"{what} has repeated indices")
        if not set(labels) <= set(allowed):
            self.fail(f"{what} = {list(labels)} is not in the 2-basis {list(allowed)}")
        if size is not None and len(labels) != size:
            self.fail(f"{what} must have {size} indices")
        return tuple(sorted(labels))

    def require_ground(self, spec, value, what):
        """value must be a nonzero element of the ground field"""
        if not value:
            self.fail(f"{what} must be nonzero")
        if spec.tower.level_of(value) >= spec.level:
            self.fail(f"{what} must not involve x")

    def basis_form(self, spec, coefficient, labels, with_dlog_p=False):
        """coefficient * dlog t_I (^ dlog p)"""
        field = self.field(spec)
        form = LogForm.term(field, coefficient, labels)
        if with_dlog_p:
            form = form.wedge(dlog_expand(field, spec.place.uniformizer))
        return form
