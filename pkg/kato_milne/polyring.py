"""
Univariate polynomials over a tower field, irreducibility search and the
gamma sequence machinery of a place
"""

import itertools
from typing import NamedTuple, Optional

import sympy

from .exceptions import (
    DegreeTooLarge, DivisionByZero, KatoMilneError, NotMonic, ZeroPolynomial,
)


# Verdicts of classify_place when no place is returned
REDUCIBLE = "REDUCIBLE"
INCONCLUSIVE = "INCONCLUSIVE"


class Poly:
    """Polynomial in the tower variable with label var, coefficients in the
    field of the level below. Immutable; zero coefficients are never stored."""

    __slots__ = ('tower', 'var', '_coeffs')

    def __init__(self, tower, var, coeffs=None):
        self.tower = tower
        self.var = var
        self._coeffs = {}
        for exponent, value in (coeffs or {}).items():
            if exponent < 0:
                raise KatoMilneError(f"Negative exponent: {exponent}")
            value = tower.element(value) if isinstance(value, int) else value
            if value:
                self._coeffs[exponent] = value

    @classmethod
    def constant(cls, tower, var, value):
        return cls(tower, var, {0: value})

    @classmethod
    def variable(cls, tower, var):
        return cls(tower, var, {1: tower.one})

    @classmethod
    def from_element(cls, tower, a, var):
        """
        Read an element of the universe field as a polynomial in var

        Args:
            tower (TowerDesc): the tower
            a (FracElement): element whose denominator is free of var
            var (int): label of the polynomial variable

        Returns:
            Poly: the polynomial

        Raises:
            KatoMilneError: if a is not polynomial in var
        """
        index = var - 1
        for monom in a.denom.keys():
            if monom[index]:
                raise KatoMilneError(f"Not a polynomial in {tower.name(var)}")
        denom = a.denom
        return cls(tower, var, {
            k: tower.field.new(numer, denom)
            for k, numer in _split_by_exponent(tower, a.numer, index).items()
        })

    @classmethod
    def split_fraction(cls, tower, a, var):
        """
        Write a = N/D with N, D polynomials in var and D monic

        Returns:
            tuple: (N, D)
        """
        index = var - 1
        numer = _split_by_exponent(tower, a.numer, index)
        denom = _split_by_exponent(tower, a.denom, index)
        lead = tower.field.new(denom[max(denom)])
        N = cls(tower, var, {k: tower.field.new(c) / lead for k, c in numer.items()})
        D = cls(tower, var, {k: tower.field.new(c) / lead for k, c in denom.items()})
        return N, D

    def to_element(self):
        x = self.tower.gen(self.var)
        total = self.tower.zero
        for exponent, value in self._coeffs.items():
            total += value * x ** exponent
        return total

    def coeffs(self):
        return dict(self._coeffs)

    def coeff(self, exponent):
        return self._coeffs.get(exponent, self.tower.zero)

    @property
    def degree(self):
        """Degree, -1 for the zero polynomial"""
        return max(self._coeffs) if self._coeffs else -1

    @property
    def lc(self):
        return self._coeffs[self.degree] if self._coeffs else self.tower.zero

    def is_zero(self):
        return not self._coeffs

    def is_monic(self):
        return bool(self._coeffs) and self.lc == 1

    def __bool__(self):
        return bool(self._coeffs)

    def __eq__(self, other):
        if isinstance(other, Poly):
            return self.var == other.var and self._coeffs == other._coeffs
        if isinstance(other, int):
            return self == Poly.constant(self.tower, self.var, other)
        return NotImplemented

    def __hash__(self):
        return hash((self.var, frozenset(self._coeffs.items())))

    def __repr__(self):
        return f"Poly({self.tower.format(self.to_element())})"

    def _lift(self, other):
        if isinstance(other, Poly):
            if other.var != self.var:
                raise KatoMilneError("Polynomials in different variables")
            return other
        return Poly.constant(self.tower, self.var, other)

    def __add__(self, other):
        other = self._lift(other)
        result = dict(self._coeffs)
        for exponent, value in other._coeffs.items():
            result[exponent] = result.get(exponent, self.tower.zero) + value
        return Poly(self.tower, self.var, result)

    __radd__ = __add__
    # characteristic 2
    __sub__ = __add__
    __rsub__ = __add__

    def __neg__(self):
        return self

    def __mul__(self, other):
        other = self._lift(other)
        result = {}
        for e1, c1 in self._coeffs.items():
            for e2, c2 in other._coeffs.items():
                result[e1 + e2] = result.get(e1 + e2, self.tower.zero) + c1 * c2
        return Poly(self.tower, self.var, result)

    __rmul__ = __mul__

    def __pow__(self, n):
        result = Poly.constant(self.tower, self.var, 1)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def square(self):
        """Squaring is additive in characteristic 2"""
        return Poly(self.tower, self.var, {2 * e: c ** 2 for e, c in self._coeffs.items()})

    def monic(self):
        if not self._coeffs:
            raise ZeroPolynomial("The zero polynomial has no monic associate")
        lead = self.lc
        return Poly(self.tower, self.var, {e: c / lead for e, c in self._coeffs.items()})

    def derivative(self):
        """Derivative with respect to the polynomial variable"""
        return Poly(self.tower, self.var, {
            e - 1: c for e, c in self._coeffs.items() if e % 2
        })

    def partial(self, label):
        """Coefficientwise partial derivative with respect to a ground variable"""
        gen = self.tower.gen(label)
        return Poly(self.tower, self.var, {e: c.diff(gen) for e, c in self._coeffs.items()})

    def map_coefficients(self, fn):
        return Poly(self.tower, self.var, {e: fn(c) for e, c in self._coeffs.items()})

    def evaluate(self, value):
        """Horner evaluation at a field element"""
        result = self.tower.zero
        for exponent in range(self.degree, -1, -1):
            result = result * value + self.coeff(exponent)
        return result

    def __divmod__(self, other):
        return poly_divmod(self, self._lift(other))

    def __mod__(self, other):
        return poly_divmod(self, self._lift(other))[1]

    def __floordiv__(self, other):
        return poly_divmod(self, self._lift(other))[0]


def _split_by_exponent(tower, poly, index):
    """Split a sympy polynomial into coefficient polynomials of one variable"""
    parts = {}
    for monom, coeff in poly.items():
        rest = monom[:index] + (0,) + monom[index + 1:]
        parts.setdefault(monom[index], {})[rest] = coeff
    return {k: tower.ring.from_dict(terms) for k, terms in parts.items()}


def poly_divmod(f, g):
    """
    Euclidean division

    Args:
        f (Poly): dividend
        g (Poly): divisor

    Returns:
        tuple: (q, r) with f = q*g + r and deg r < deg g

    Raises:
        DivisionByZero: if g is zero
    """
    if not g:
        raise DivisionByZero("Polynomial division by zero")
    tower, var = f.tower, f.var
    remainder = dict(f.coeffs())
    quotient = {}
    dg = g.degree
    inverse_lc = g.lc ** -1
    g_coeffs = g.coeffs()
    while remainder and max(remainder) >= dg:
        top = max(remainder)
        factor = remainder[top] * inverse_lc
        shift = top - dg
        quotient[shift] = factor
        for exponent, value in g_coeffs.items():
            key = exponent + shift
            updated = remainder.get(key, tower.zero) + factor * value
            if updated:
                remainder[key] = updated
            else:
                remainder.pop(key, None)
    return Poly(tower, var, quotient), Poly(tower, var, remainder)


def reduce_mod(f, p):
    """The representative of f modulo p of degree < deg p"""
    return poly_divmod(f, p)[1]


def poly_gcdex(f, g):
    """
    Extended Euclid

    Returns:
        tuple: (s, t, h) with s*f + t*g = h, h the monic gcd (or zero)
    """
    tower, var = f.tower, f.var
    zero = Poly(tower, var)
    one = Poly.constant(tower, var, 1)
    r0, r1 = f, g
    s0, s1 = one, zero
    t0, t1 = zero, one
    while r1:
        q, r = poly_divmod(r0, r1)
        r0, r1 = r1, r
        s0, s1 = s1, s0 - q * s1
        t0, t1 = t1, t0 - q * t1
    if not r0:
        return s0, t0, r0
    inverse_lc = r0.lc ** -1
    return s0 * inverse_lc, t0 * inverse_lc, r0 * inverse_lc


def poly_gcd(f, g):
    return poly_gcdex(f, g)[2]


def invert_mod(a, m):
    """
    Inverse of a modulo m

    Raises:
        DivisionByZero: if a is not a unit modulo m
    """
    s, _t, h = poly_gcdex(a, m)
    if h.degree != 0:
        raise DivisionByZero("Not invertible modulo the given polynomial")
    return reduce_mod(s, m)


def gamma_seq(place, n):
    """
    The sequence gamma_0, ..., gamma_n of a finite place:
    gamma_0 = 1 and gamma_i = sum_{k=1..d} gamma_(i-k) * p_k,
    where p = x^d + p_1 x^(d-1) + ... + p_d.

    Args:
        place (FinitePlace): the place
        n (int): last index

    Returns:
        list: gamma_0 .. gamma_n
    """
    return [place.gamma(i) for i in range(n + 1)]


def t_p_functional(f, place):
    """
    The functional t_p: coefficient of x^(d-1)

    Raises:
        DegreeTooLarge: if deg f >= d
    """
    if f.degree >= place.degree:
        raise DegreeTooLarge(f"Degree {f.degree} must be below {place.degree}; reduce first")
    return f.coeff(place.degree - 1)


def constant_part(h):
    """h(0)"""
    return h.coeff(0)


class PlaceVerdict(NamedTuple):
    """Outcome of classify_place when no place is certified"""
    verdict: str
    factor: Optional[Poly]
    searched: int


class _SearchExhausted(Exception):
    """Candidate budget exceeded"""
    pass


def classify_place(p, search_bound, max_candidates=200000, inseparable_index=None):
    """
    Decide whether p defines a place

    Irreducibility is decided by exhaustive search for monic factors of
    degree <= d/2 with polynomial coefficients whose degrees are bounded by
    the Newton polygon of p. Over F_2 (level 1) sympy's GF(2) factorization
    is used.

    Args:
        p (Poly): monic polynomial of positive degree
        search_bound (int): largest coefficient degree searched
        max_candidates (int): candidate budget
        inseparable_index (int): admissible index to use instead of the smallest

    Returns:
        FinitePlace or PlaceVerdict

    Raises:
        ZeroPolynomial: if p is constant
        NotMonic: if p is not monic
    """
    from .place import FinitePlace

    if p.degree < 1:
        raise ZeroPolynomial("A place needs a polynomial of positive degree")
    if not p.is_monic():
        raise NotMonic(f"Polynomial is not monic: {p}")
    try:
        factor, searched = find_monic_factor(p, search_bound, max_candidates)
    except _SearchExhausted as e:
        return PlaceVerdict(INCONCLUSIVE, None, e.args[0])
    if factor is not None:
        return PlaceVerdict(REDUCIBLE, factor, searched)
    place = FinitePlace(p, inseparable_index=inseparable_index)
    place.searched = searched
    return place


def factor_monic(p, search_bound, max_candidates=200000):
    """
    Factor a monic polynomial into monic irreducibles

    Returns:
        list: (factor, multiplicity) pairs, or None when the search is inconclusive
    """
    pending = [p]
    found = {}
    try:
        while pending:
            current = pending.pop()
            if current.degree < 1:
                continue
            factor, _searched = find_monic_factor(current, search_bound, max_candidates)
            if factor is None:
                found[current] = found.get(current, 0) + 1
            else:
                pending.append(factor)
                pending.append(current // factor)
    except _SearchExhausted:
        return None
    return sorted(found.items(), key=lambda item: (item[0].degree, repr(item[0])))


def find_monic_factor(p, search_bound, max_candidates):
    """
    Find a proper monic factor of p

    Returns:
        tuple: (factor or None, number of candidates tested)
    """
    tower, var = p.tower, p.var
    if p.degree == 1:
        return None, 0
    if var == 1:
        return _factor_over_f2(p), 0
    # monic transform y = c*x clears the coefficient denominators
    c = tower.one
    for exponent in range(p.degree):
        c = _lcm_element(tower, c, p.coeff(exponent).denom)
    d = p.degree
    q = Poly(tower, var, {e: v * c ** (d - e) for e, v in p.coeffs().items()})
    # Newton polygon slope: roots have degree at most rho
    rho = max(
        (_total_degree(q.coeff(d - k).numer) / k for k in range(1, d + 1) if q.coeff(d - k)),
        default=0,
    )
    searched = 0
    for k in range(1, d // 2 + 1):
        bounds = [int(j * rho) for j in range(1, k + 1)]
        if max(bounds) > search_bound:
            raise _SearchExhausted(searched)
        choices = [_coefficient_candidates(tower, var - 1, bound) for bound in bounds]
        total = 1
        for options in choices:
            total *= len(options)
        if searched + total > max_candidates:
            raise _SearchExhausted(searched)
        for picked in itertools.product(*choices):
            searched += 1
            coeffs = {k: tower.one}
            for j, value in enumerate(picked, start=1):
                coeffs[k - j] = value
            g = Poly(tower, var, coeffs)
            if not g.coeff(0) and q.coeff(0):
                continue
            if not (q % g):
                # back to x: g(c x) / c^k
                return Poly(tower, var, {
                    e: v * c ** e / c ** k for e, v in g.coeffs().items()
                }), searched
    return None, searched


def _lcm_element(tower, c, denom):
    numer = c.numer
    lcm = numer.lcm(denom)
    return tower.field.new(lcm)


def _total_degree(poly):
    return max((sum(monom) for monom in poly.keys()), default=0)


_CANDIDATE_CACHE = {}


def _coefficient_candidates(tower, nvars, bound):
    """All polynomials over F_2 in the first nvars generators of total degree <= bound"""
    key = (tower.K, nvars, bound)
    if key not in _CANDIDATE_CACHE:
        monomials = [
            tower.monomial([label for label, e in enumerate(exps, start=1) for _ in range(e)])
            for exps in itertools.product(range(bound + 1), repeat=nvars)
            if sum(exps) <= bound
        ]
        candidates = []
        for mask in itertools.product((0, 1), repeat=len(monomials)):
            value = tower.zero
            for bit, monomial in zip(mask, monomials):
                if bit:
                    value += monomial
            candidates.append(value)
        _CANDIDATE_CACHE[key] = candidates
    return _CANDIDATE_CACHE[key]


def to_sympy_poly(p, symbol=None):
    """Convert a polynomial with coefficients in F_2 to a sympy Poly over GF(2)"""
    symbol = symbol or sympy.Symbol(p.tower.name(p.var))
    coeffs = []
    for exponent in range(p.degree, -1, -1):
        value = p.coeff(exponent)
        if value not in (0, 1):
            raise KatoMilneError("Coefficients must lie in F_2")
        coeffs.append(int(bool(value)))
    return sympy.Poly(coeffs, symbol, modulus=2)


def from_sympy_poly(tower, var, poly):
    coeffs = poly.all_coeffs()
    degree = len(coeffs) - 1
    return Poly(tower, var, {
        degree - i: tower.one for i, value in enumerate(coeffs) if int(value) % 2
    })


def _factor_over_f2(p):
    _lead, factors = to_sympy_poly(p).factor_list()
    for factor, _multiplicity in factors:
        if 0 < factor.degree() < p.degree:
            return from_sympy_poly(p.tower, p.var, factor)
    return None


def specialize(p, values):
    """
    Substitute F_2 values for the ground variables

    Args:
        p (Poly): polynomial over the level below p.var
        values (dict): label -> 0 or 1

    Returns:
        sympy.Poly or None: the specialization over GF(2), None if a
        denominator vanishes
    """
    tower = p.tower
    coeffs = []
    for exponent in range(p.degree, -1, -1):
        value = p.coeff(exponent)
        numer = _evaluate_f2(value.numer, values)
        denom = _evaluate_f2(value.denom, values)
        if not denom:
            return None
        coeffs.append(numer)
    return sympy.Poly(coeffs, sympy.Symbol(tower.name(p.var)), modulus=2)


def _evaluate_f2(poly, values):
    total = 0
    for monom, _coeff in poly.items():
        term = 1
        for index, exponent in enumerate(monom):
            if exponent:
                term *= values.get(index + 1, 0)
        total ^= term
    return total


def specialization_check(p):
    """
    Certify irreducibility of a monic p through an F_2 specialization of
    the ground variables that keeps the degree and is irreducible over F_2

    Returns:
        dict or None: the certifying assignment label -> 0 or 1
    """
    labels = range(1, p.var)
    for bits in itertools.product((0, 1), repeat=len(labels)):
        values = dict(zip(labels, bits))
        image = specialize(p, values)
        if image is not None and image.degree() == p.degree and image.is_irreducible:
            return values
    return None
