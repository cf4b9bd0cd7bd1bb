"""
Finite place: a monic irreducible polynomial p
"""

from .place import Place
from ..exceptions import ConstraintViolation, KatoMilneError, NotMonic, ZeroPolynomial
from ..polyring import Poly, invert_mod


class FinitePlace(Place):
    """Place given by a monic irreducible polynomial p of degree d.

    The residue field F[x]/(p) has the 2-basis {t_i} when p is separable.
    When p is inseparable the basis is {t_i : i != i'} together with the
    class of x, where i' is an admissible index (dp/dt_i' != 0).
    """

    def __init__(self, poly, inseparable_index=None, assumed=False):
        if poly.degree < 1:
            raise ZeroPolynomial("A place needs a polynomial of positive degree")
        if not poly.is_monic():
            raise NotMonic(f"Polynomial is not monic: {poly}")
        super().__init__(poly.tower, poly.var)
        self.poly = poly
        # True when irreducibility was not certified by classify_place
        self.assumed = assumed
        # candidates tested by the factor search, set by classify_place
        self.searched = 0
        # F_2 assignment certifying irreducibility, set by parse_place
        self.specialization = None
        self._separable = bool(poly.derivative())
        self._gamma = [self.tower.one]
        if self._separable:
            if inseparable_index is not None:
                raise ConstraintViolation("Only inseparable places take an index i'")
            self.inseparable_index = None
        else:
            admissible = self.admissible_indices
            if not admissible:
                raise KatoMilneError(f"Inseparable polynomial without admissible index: {self.text()}")
            if inseparable_index is None:
                inseparable_index = admissible[0]
            elif inseparable_index not in admissible:
                raise ConstraintViolation(
                    f"Index {inseparable_index} is not admissible for {self.text()}; "
                    f"admissible: {list(admissible)}")
            self.inseparable_index = inseparable_index

    @property
    def is_infinite(self):
        return False

    @property
    def degree(self):
        return self.poly.degree

    @property
    def is_separable(self):
        return self._separable

    @property
    def admissible_indices(self):
        """Ground labels i with dp/dt_i != 0, in increasing order"""
        return tuple(i for i in self.ground_labels if self.poly.partial(i))

    @property
    def uniformizer(self):
        return self.poly.to_element()

    @property
    def constant_term(self):
        """p_c = p(0)"""
        return self.poly.coeff(0)

    def coefficient(self, k):
        """p_k in p = x^d + p_1 x^(d-1) + ... + p_d; p_0 = 1, zero outside 0..d"""
        if not 0 <= k <= self.degree:
            return self.tower.zero
        return self.poly.coeff(self.degree - k)

    @property
    def residue_labels(self):
        if self._separable:
            return self.ground_labels
        return tuple(
            i for i in self.ground_labels if i != self.inseparable_index
        ) + (self.label_x,)

    def key(self):
        return ('finite', self.tower.K, self.level, self.poly, self.inseparable_index)

    def text(self):
        return self.tower.format(self.poly.to_element())

    def gamma(self, i):
        """gamma_i, memoized; zero for negative i"""
        if i < 0:
            return self.tower.zero
        while len(self._gamma) <= i:
            n = len(self._gamma)
            value = self.tower.zero
            for k in range(1, self.degree + 1):
                if n - k >= 0:
                    value += self._gamma[n - k] * self.coefficient(k)
            self._gamma.append(value)
        return self._gamma[i]

    def trace_of_power(self, i):
        """Trace of x^i: sum over k with d-k odd of p_k * gamma_(i-k)"""
        key = ('trace', i)
        if key not in self._cache:
            value = self.tower.zero
            for k in range(self.degree + 1):
                if (self.degree - k) % 2:
                    value += self.coefficient(k) * self.gamma(i - k)
            self._cache[key] = value
        return self._cache[key]

    def trace(self, c):
        """Trace of a residue class c (digit polynomial) down to the ground field"""
        value = self.tower.zero
        for exponent, coeff in c.coeffs().items():
            value += coeff * self.trace_of_power(exponent)
        return value

    def zero_digit(self):
        return Poly(self.tower, self.level)

    def basis_lift(self, labels):
        result = Poly.constant(self.tower, self.level, 1)
        for label in labels:
            if label == self.label_x:
                result = result * Poly.variable(self.tower, self.level)
            else:
                result = result * self.tower.gen(label)
        return result

    def reduce(self, g):
        quotient, remainder = divmod(g, self.poly)
        return remainder, quotient

    def residue_mul(self, a, b):
        return (a * b) % self.poly

    def residue_inv(self, a):
        return invert_mod(a, self.poly)

    def reduce_element(self, a):
        numer, denom = Poly.split_fraction(self.tower, a, self.level)
        denom = denom % self.poly
        if not denom:
            raise KatoMilneError(f"Element is not integral at {self.text()}")
        return (numer % self.poly) * self.residue_inv(denom) % self.poly

    def dt_map(self, label):
        key = ('dt', label)
        if key in self._cache:
            return self._cache[key]
        tower = self.tower
        p = self.uniformizer
        if label == self.label_x:
            if self._separable:
                p_x = self.poly.derivative().to_element()
                result = {self.label_pi: p / p_x}
                for i in self.ground_labels:
                    partial = self.poly.partial(i).to_element()
                    if partial:
                        result[i] = partial * tower.gen(i) / p_x
            else:
                result = {self.label_x: tower.gen(label)}
        elif label == self.inseparable_index:
            pivot = self.poly.partial(label).to_element()
            result = {self.label_pi: p / pivot}
            for i in self.ground_labels:
                if i == label:
                    continue
                partial = self.poly.partial(i).to_element()
                if partial:
                    result[i] = partial * tower.gen(i) / pivot
        else:
            result = {label: tower.gen(label)}
        self._cache[key] = result
        return result

    def residue_value(self, digit):
        return digit % self.poly

    def residue_lift(self, value):
        return value.to_element()

    def _make_residue_field(self):
        from ..residuefield import ResidueField
        return ResidueField(self)
