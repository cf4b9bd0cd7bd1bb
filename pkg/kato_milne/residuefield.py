"""
Residue fields F(p) = F[x]/(p) of finite places and their 2-basis expansion
"""

from sympy.polys.matrices import DomainMatrix

from .exceptions import KatoMilneError, PlaceNotClassified
from .forms import FormField
from .groundfield import frobenius_decompose
from .place import Place
from .polyring import Poly


class ResidueField(FormField):
    """F(p) with elements stored as digit polynomials of degree < deg p.

    The 2-basis is the residue basis of the place: {t_i} for separable p,
    {t_i : i != i'} plus the class of x for inseparable p.
    """

    def __init__(self, place):
        if place.is_infinite:
            raise PlaceNotClassified("The residue field at inf is the ground field")
        self.place = place
        self.tower = place.tower

    @property
    def labels(self):
        return self.place.residue_labels

    @property
    def level(self):
        return self.place.level

    def key(self):
        return ('residue',) + self.place.key()

    def zero(self):
        return self.place.zero_digit()

    def one(self):
        return Poly.constant(self.tower, self.level, 1)

    def lift(self, value):
        """Coerce a ground element or a polynomial into the residue field"""
        if isinstance(value, Poly):
            return value % self.place.poly
        return Poly.constant(self.tower, self.level, value)

    def normalize(self, a):
        return self.lift(a)

    def mul(self, a, b):
        return self.place.residue_mul(self.lift(a), self.lift(b))

    def inv(self, a):
        return self.place.residue_inv(self.lift(a))

    def differential(self, a):
        a = self.lift(a)
        result = {}
        for label in self.tower.labels(self.level):
            if label == self.place.label_x:
                partial = a.derivative()
            else:
                partial = a.partial(label)
            if not partial:
                continue
            for local, value in self.place.residue_dt_map(label).items():
                term = self.mul(partial, value)
                updated = self.add(result[local], term) if local in result else term
                if updated:
                    result[local] = updated
                else:
                    result.pop(local, None)
        return result

    def basis_element(self, label):
        if label == self.place.label_x:
            return Poly.variable(self.tower, self.level) % self.place.poly
        return Poly.constant(self.tower, self.level, self.tower.gen(label))

    def frobenius_decompose(self, a):
        parts, _k = residue_field_decompose(self.lift(a), self.place)
        return parts

    def trace(self, a):
        """Trace down to the ground field"""
        return self.place.trace(self.lift(a))

    def format(self, a):
        return self.tower.format(self.lift(a).to_element())

    def label_name(self, label):
        return self.tower.name(label)

    def describe(self):
        return f"F({self.place.text()})"


def residue_field_decompose(f, place):
    """
    2-basis expansion in the residue field: f = sum t^J f_J^2 + p*k

    The coordinates come from a Frobenius-semilinear system over the ground
    field: writing f_J = sum c_(J,e) x^e and expanding both sides in the
    2-basis of the ground field gives a square linear system in the c_(J,e)
    of size deg(p) * 2^(level-1). Its inverse is memoized per place.

    Args:
        f (Poly): digit polynomial, deg f < deg p
        place (Place): a classified place

    Returns:
        tuple: ({J: f_J}, k) with J sorted residue label tuples and the
        identity holding exactly in F[x]

    Raises:
        PlaceNotClassified: if place is not a classified place
    """
    if not isinstance(place, Place):
        raise PlaceNotClassified(f"Not a classified place: {place!r}")
    tower = place.tower
    if place.is_infinite:
        return {
            J: Poly.constant(tower, place.level, value)
            for J, value in frobenius_decompose(tower, f.coeff(0)).items()
        }, place.zero_digit()
    if f.degree >= place.degree:
        raise KatoMilneError(f"Digit of degree {f.degree} at a place of degree {place.degree}")
    columns, rows, inverse = _decomposition_system(place)
    rhs = [tower.zero] * len(rows)
    row_index = {row: i for i, row in enumerate(rows)}
    for j, coeff in f.coeffs().items():
        for K, value in frobenius_decompose(tower, coeff).items():
            rhs[row_index[(j, K)]] = value
    parts = {}
    for (J, e), row in zip(columns, inverse):
        value = tower.zero
        for entry, b in zip(row, rhs):
            if entry and b:
                value += entry * b
        if value:
            parts.setdefault(J, {})[e] = value
    parts = {J: Poly(tower, place.level, coeffs) for J, coeffs in sorted(parts.items())}
    remainder = f
    for J, part in parts.items():
        remainder = remainder + place.basis_lift(J) * part.square()
    k, rest = divmod(remainder, place.poly)
    if rest:
        raise KatoMilneError(f"Residue field decomposition failed at {place.text()}")
    return parts, k


def residue_field_recompose(parts, place):
    """sum t^J f_J^2 reduced modulo p"""
    total = place.zero_digit()
    for J, part in parts.items():
        total = total + place.basis_lift(J) * part.square()
    if place.is_infinite:
        return total
    return total % place.poly


def _subsets(labels):
    result = [()]
    for label in labels:
        result += [subset + (label,) for subset in result]
    return sorted(result, key=lambda s: (len(s), s))


def _decomposition_system(place):
    """Columns, rows and inverse matrix rows of the decomposition system"""
    if 'decomposition' in place._cache:
        return place._cache['decomposition']
    tower = place.tower
    d = place.degree
    x = Poly.variable(tower, place.level)
    columns = [(J, e) for J in _subsets(place.residue_labels) for e in range(d)]
    rows = [(j, K) for j in range(d) for K in _subsets(place.ground_labels)]
    if len(columns) != len(rows):
        raise KatoMilneError(f"Residue basis of {place.text()} has the wrong size")
    row_index = {row: i for i, row in enumerate(rows)}
    matrix = [[tower.zero] * len(columns) for _ in rows]
    for column, (J, e) in enumerate(columns):
        image = (place.basis_lift(J) * x ** (2 * e)) % place.poly
        for j, coeff in image.coeffs().items():
            for K, value in frobenius_decompose(tower, coeff).items():
                matrix[row_index[(j, K)]][column] = value
    domain = tower.field.to_domain()
    system = DomainMatrix(
        [[domain.convert(entry) for entry in row] for row in matrix],
        (len(rows), len(columns)), domain,
    )
    inverse = system.inv().to_list()
    place._cache['decomposition'] = (columns, rows, inverse)
    return place._cache['decomposition']
