"""
Exact arithmetic in the tower fields k_0 = F_2, k_j = k_(j-1)(t_j)
"""

import operator

from sympy import GF
from sympy.polys.fields import field
from sympy.polys.orderings import grlex

from .exceptions import DivisionByZero, KatoMilneError


class TowerDesc:
    """Description of the tower F_2(t1, ..., tK)(x).
    The keyed singleton guarantees that only an instance exists for each K.

    All levels share one sympy fraction field over GF(2) whose generators
    are t1, ..., tK, x. Generator i (1-based) is the basis label i, so x is
    label K+1. Level n is the subfield generated by the first n generators.
    """

    # Instance dictionary. The key is K
    _instances = {}

    def __new__(cls, K):
        if not isinstance(K, int) or K < 0:
            raise KatoMilneError(f"Invalid number of ground variables: {K}")
        if K not in cls._instances:
            instance = super().__new__(cls)
            cls._instances[K] = instance
            instance._initialized = False
        return cls._instances[K]

    def __init__(self, K):
        if self._initialized:
            return
        self.K = K
        self.names = tuple(f"t{i}" for i in range(1, K + 1)) + ("x",)
        universe = field(",".join(self.names), GF(2), order=grlex)
        self.field = universe[0]
        self.gens = tuple(universe[1:])
        self.ring = self.field.ring
        self._initialized = True

    def __repr__(self):
        return f"TowerDesc({self.K})"

    def __reduce__(self):
        return (TowerDesc, (self.K,))

    @property
    def top(self):
        """Label of the top variable x"""
        return self.K + 1

    @property
    def zero(self):
        return self.field.zero

    @property
    def one(self):
        return self.field.one

    def gen(self, label):
        """
        Return the generator with the given basis label

        Args:
            label (int): 1-based label, K+1 for x

        Returns:
            FracElement: the generator
        """
        if not 1 <= label <= self.top:
            raise KatoMilneError(f"Invalid basis label: {label}")
        return self.gens[label - 1]

    def name(self, label):
        return self.names[label - 1]

    def labels(self, level):
        """Basis labels of the field at the given level"""
        return tuple(range(1, level + 1))

    def element(self, value):
        """Coerce an integer or a polynomial of the universe ring"""
        return self.field(value)

    def monomial(self, labels):
        """Product of the generators in labels (the basis monomial t^J)"""
        result = self.one
        for label in labels:
            result = result * self.gen(label)
        return result

    def level_of(self, a):
        """
        Smallest level whose field contains a

        Args:
            a (FracElement): element of the universe field

        Returns:
            int: 0 for constants, else the largest label occurring in a
        """
        level = 0
        for poly in (a.numer, a.denom):
            for monom in poly.keys():
                for index, exponent in enumerate(monom):
                    if exponent and index + 1 > level:
                        level = index + 1
        return level

    def format(self, a):
        """Canonical text of an element, as accepted by the parser"""
        numer = self._format_poly(a.numer)
        if a.denom == self.ring.one:
            return numer
        denom = self._format_poly(a.denom)
        if len(a.numer) > 1:
            numer = f"({numer})"
        return f"{numer}/({denom})"

    def _format_poly(self, poly):
        if not poly:
            return "0"
        terms = []
        for monom, _coeff in poly.terms():
            factors = []
            for index, exponent in enumerate(monom):
                if exponent == 1:
                    factors.append(self.names[index])
                elif exponent > 1:
                    factors.append(f"{self.names[index]}^{exponent}")
            terms.append("*".join(factors) if factors else "1")
        return " + ".join(terms)


_OPERATIONS = {
    'add': operator.add,
    'sub': operator.sub,
    'mul': operator.mul,
    'div': operator.truediv,
}


def field_arith(op, a, b=None):
    """
    Field operation on canonical elements

    Args:
        op (str): one of 'add', 'sub', 'mul', 'div', 'inv', 'neg'
        a (FracElement): first operand
        b (FracElement): second operand for binary operations

    Returns:
        FracElement: canonical result

    Raises:
        DivisionByZero: on inverting or dividing by zero
        KatoMilneError: on an unknown operation
    """
    try:
        if op == 'inv':
            return a ** -1
        if op == 'neg':
            return -a
        if op not in _OPERATIONS:
            raise KatoMilneError(f"Unknown field operation: {op}")
        return _OPERATIONS[op](a, b)
    except ZeroDivisionError as e:
        if isinstance(e, DivisionByZero):
            raise
        raise DivisionByZero(f"Division by zero in '{op}'")


def frobenius_decompose(tower, a):
    """
    Expand a in the 2-basis: a = sum over J of t^J * a_J^2

    a/b is rewritten as a*b/b^2 and every monomial t^e of a*b is split as
    t^(e mod 2) * (t^(e div 2))^2.

    Args:
        tower (TowerDesc): the tower a lives in
        a (FracElement): element to decompose

    Returns:
        dict: sorted label tuple J -> a_J, no zero entries
    """
    if not a:
        return {}
    ring = tower.ring
    numer = a.numer * a.denom
    halves = {}
    for monom, coeff in numer.items():
        odd = tuple(index + 1 for index, exponent in enumerate(monom) if exponent % 2)
        half = tuple(exponent // 2 for exponent in monom)
        halves.setdefault(odd, {})[half] = coeff
    return {
        J: tower.field.new(ring.from_dict(terms), a.denom)
        for J, terms in sorted(halves.items())
    }


def frobenius_recompose(tower, parts):
    """Inverse of frobenius_decompose"""
    total = tower.zero
    for J, value in parts.items():
        total += tower.monomial(J) * value ** 2
    return total


def partial_derivative(tower, a, label):
    """
    Partial derivative of a with respect to the generator with label

    Args:
        tower (TowerDesc): the tower a lives in
        a (FracElement): element to differentiate
        label (int): basis label of the variable

    Returns:
        FracElement: derivative, computed by the quotient rule
    """
    return a.diff(tower.gen(label))
