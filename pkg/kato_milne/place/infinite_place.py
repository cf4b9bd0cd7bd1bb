"""
The place 1/x
"""

from .place import Place
from ..exceptions import KatoMilneError
from ..polyring import Poly


class InfinitePlace(Place):
    """The degree valuation of F(x), with uniformizer 1/x and residue field F.
    dlog(1/x) = dlog x in characteristic 2, and digits are constants."""

    def __init__(self, tower, level=None):
        super().__init__(tower, tower.top if level is None else level)

    @property
    def is_infinite(self):
        return True

    @property
    def degree(self):
        return 1

    @property
    def is_separable(self):
        return True

    @property
    def inseparable_index(self):
        return None

    @property
    def uniformizer(self):
        return self.tower.gen(self.level) ** -1

    @property
    def residue_labels(self):
        return self.ground_labels

    def key(self):
        return ('inf', self.tower.K, self.level)

    def text(self):
        return "inf"

    def zero_digit(self):
        return Poly(self.tower, self.level)

    def basis_lift(self, labels):
        return Poly.constant(self.tower, self.level, self.tower.monomial(labels))

    def reduce(self, g):
        return g, Poly(self.tower, self.level)

    def reduce_element(self, a):
        numer, denom = Poly.split_fraction(self.tower, a, self.level)
        if numer.degree > denom.degree:
            raise KatoMilneError("Element is not integral at inf")
        if numer.degree < denom.degree:
            return Poly(self.tower, self.level)
        return Poly.constant(self.tower, self.level, numer.lc / denom.lc)

    def dt_map(self, label):
        if label == self.label_x:
            return {self.label_pi: self.tower.gen(label)}
        return {label: self.tower.gen(label)}

    def residue_value(self, digit):
        return digit.coeff(0)

    def residue_lift(self, value):
        return value

    def _make_residue_field(self):
        from ..forms import TowerField
        return TowerField(self.tower, self.level - 1)
