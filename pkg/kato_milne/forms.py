"""
Logarithmic differential forms over a field with a fixed 2-basis
"""

from abc import ABC, abstractmethod

from .exceptions import FieldMismatch, KatoMilneError, ZeroArgument
from .groundfield import frobenius_decompose, partial_derivative


class FormField(ABC):
    """Abstract base class for a field with a fixed, ordered 2-basis.
    Forms over the field are written in the basis dlog t_l, l in labels."""

    def __new__(cls, *args, **kwargs):
        """Prevent direct instantiation of FormField"""
        if cls is FormField:
            raise TypeError("Cannot instantiate abstract class FormField")
        return super().__new__(cls)

    @property
    @abstractmethod
    def labels(self) -> tuple:
        pass

    @abstractmethod
    def key(self) -> tuple:
        pass

    @abstractmethod
    def zero(self):
        pass

    @abstractmethod
    def one(self):
        pass

    @abstractmethod
    def mul(self, a, b):
        pass

    @abstractmethod
    def inv(self, a):
        pass

    @abstractmethod
    def differential(self, a) -> dict:
        """
        da in the logarithmic basis

        Returns:
            dict: label -> coefficient of dlog t_label
        """
        pass

    @abstractmethod
    def basis_element(self, label):
        pass

    @abstractmethod
    def format(self, a) -> str:
        pass

    @abstractmethod
    def label_name(self, label) -> str:
        pass

    def normalize(self, a):
        """Coerce integer literals, read modulo 2, into the field"""
        if isinstance(a, int):
            return self.one() if a % 2 else self.zero()
        return a

    def add(self, a, b):
        return self.normalize(a + b)

    def square(self, a):
        return self.mul(a, a)

    def frobenius_decompose(self, a):
        """2-basis expansion a = sum t^J a_J^2, when the field supports it"""
        raise KatoMilneError(f"No exact 2-basis decomposition over {self.describe()}")

    def monomial(self, labels):
        result = self.one()
        for label in labels:
            result = self.mul(result, self.basis_element(label))
        return result

    def describe(self):
        return type(self).__name__

    def __eq__(self, other):
        return isinstance(other, FormField) and self.key() == other.key()

    def __hash__(self):
        return hash(self.key())


class TowerField(FormField):
    """The tower field F_2(t_1, ..., t_level) with basis t_1 < ... < t_level"""

    def __init__(self, tower, level):
        self.tower = tower
        self.level = level

    @property
    def labels(self):
        return self.tower.labels(self.level)

    def key(self):
        return ('tower', self.tower.K, self.level)

    def normalize(self, a):
        if isinstance(a, int):
            return self.tower.element(a % 2)
        return a

    def zero(self):
        return self.tower.zero

    def one(self):
        return self.tower.one

    def mul(self, a, b):
        return a * b

    def inv(self, a):
        return a ** -1

    def differential(self, a):
        result = {}
        for label in self.labels:
            partial = partial_derivative(self.tower, a, label)
            if partial:
                result[label] = partial * self.tower.gen(label)
        return result

    def basis_element(self, label):
        return self.tower.gen(label)

    def frobenius_decompose(self, a):
        return frobenius_decompose(self.tower, a)

    def format(self, a):
        return self.tower.format(a)

    def label_name(self, label):
        return self.tower.name(label)

    def describe(self):
        names = ", ".join(self.tower.name(i) for i in self.labels)
        return f"F_2({names})" if names else "F_2"


class LocalField(FormField):
    """F(x) viewed in the local 2-basis of a place: residue basis plus the
    uniformizer. Coefficients are exact elements of F(x)."""

    def __init__(self, place):
        self.place = place
        self.tower = place.tower

    @property
    def labels(self):
        return self.place.local_labels

    def key(self):
        return ('local',) + self.place.key()

    def zero(self):
        return self.tower.zero

    def one(self):
        return self.tower.one

    def mul(self, a, b):
        return a * b

    def inv(self, a):
        return a ** -1

    def differential(self, a):
        result = {}
        for label in self.tower.labels(self.place.level):
            partial = partial_derivative(self.tower, a, label)
            if not partial:
                continue
            for local, value in self.place.dt_map(label).items():
                updated = result.get(local, self.tower.zero) + partial * value
                if updated:
                    result[local] = updated
                else:
                    result.pop(local, None)
        return result

    def basis_element(self, label):
        if label == self.place.label_pi:
            return self.place.uniformizer
        return self.tower.gen(label)

    def format(self, a):
        return self.tower.format(a)

    def label_name(self, label):
        if label == self.place.label_pi:
            return "pi"
        return self.tower.name(label)

    def describe(self):
        return f"completion at {self.place.text()}"


class LogForm:
    """Finite sum of terms a_S * dlog t_S over a FormField.
    Index sets are sorted label tuples of length degree; zero terms are never stored."""

    __slots__ = ('field', 'degree', '_terms')

    def __init__(self, field, degree, terms=None):
        if degree < 0:
            raise KatoMilneError(f"Invalid form degree: {degree}")
        self.field = field
        self.degree = degree
        self._terms = {}
        allowed = set(field.labels)
        for labels, coef in (terms or {}).items():
            labels = tuple(labels)
            if len(labels) != degree or len(set(labels)) != degree:
                raise KatoMilneError(f"Index set {labels} does not have degree {degree}")
            if not set(labels) <= allowed:
                raise KatoMilneError(f"Index set {labels} is not in the basis of {field.describe()}")
            key = tuple(sorted(labels))
            value = field.normalize(coef)
            if key in self._terms:
                value = field.add(self._terms[key], value)
            if value:
                self._terms[key] = value
            else:
                self._terms.pop(key, None)

    @classmethod
    def zero(cls, field, degree):
        return cls(field, degree)

    @classmethod
    def term(cls, field, coef, labels=()):
        """Single term; repeated labels give zero"""
        labels = tuple(labels)
        if len(set(labels)) != len(labels):
            return cls(field, len(labels))
        return cls(field, len(labels), {tuple(sorted(labels)): coef})

    def terms(self):
        return dict(self._terms)

    def items(self):
        return sorted(self._terms.items())

    def coefficient(self, labels):
        return self._terms.get(tuple(sorted(labels)), self.field.zero())

    def is_zero(self):
        return not self._terms

    def __bool__(self):
        return bool(self._terms)

    def __len__(self):
        return len(self._terms)

    def _check(self, other):
        if not isinstance(other, LogForm) or other.field != self.field:
            raise FieldMismatch("Forms live over different fields")
        if other.degree != self.degree:
            raise KatoMilneError(f"Degree mismatch: {self.degree} and {other.degree}")

    def __add__(self, other):
        self._check(other)
        result = LogForm(self.field, self.degree, self._terms)
        for labels, coef in other._terms.items():
            value = coef
            if labels in result._terms:
                value = self.field.add(result._terms[labels], coef)
            if value:
                result._terms[labels] = value
            else:
                result._terms.pop(labels, None)
        return result

    # characteristic 2
    __sub__ = __add__

    def __neg__(self):
        return self

    def __eq__(self, other):
        if not isinstance(other, LogForm):
            return NotImplemented
        return (self.field == other.field and self.degree == other.degree
                and self._terms == other._terms)

    def __hash__(self):
        return hash((self.field, self.degree, frozenset(self._terms.items())))

    def scale(self, c):
        return LogForm(self.field, self.degree, {
            labels: self.field.mul(c, coef) for labels, coef in self._terms.items()
        })

    def wedge(self, other):
        if not isinstance(other, LogForm) or other.field != self.field:
            raise FieldMismatch("Cannot wedge forms over different fields")
        result = {}
        field = self.field
        for left, a in self._terms.items():
            for right, b in other._terms.items():
                if set(left) & set(right):
                    continue
                key = tuple(sorted(left + right))
                value = field.mul(a, b)
                result[key] = field.add(result[key], value) if key in result else value
        return LogForm(field, self.degree + other.degree, result)

    def exterior_d(self):
        result = {}
        field = self.field
        for labels, coef in self._terms.items():
            for label, value in field.differential(coef).items():
                if label in labels:
                    continue
                key = tuple(sorted(labels + (label,)))
                result[key] = field.add(result[key], value) if key in result else value
        return LogForm(field, self.degree + 1, result)

    def artin_schreier(self):
        field = self.field
        return LogForm(field, self.degree, {
            labels: field.add(field.square(coef), coef) for labels, coef in self._terms.items()
        })

    def text(self):
        if not self._terms:
            return "0"
        parts = []
        for labels, coef in self.items():
            piece = f"({self.field.format(coef)})"
            if labels:
                piece += " " + " ^ ".join(f"dlog({self.field.label_name(l)})" for l in labels)
            parts.append(piece)
        return " + ".join(parts)

    def __repr__(self):
        return f"LogForm[{self.degree}]({self.text()})"


def wedge(omega, eta):
    """omega ^ eta; no signs in characteristic 2"""
    return omega.wedge(eta)


def exterior_d(omega):
    """d(a dlog t_S) = da ^ dlog t_S"""
    return omega.exterior_d()


def artin_schreier(omega):
    """Termwise (a^2 + a) dlog t_S"""
    return omega.artin_schreier()


def dlog_expand(field, f):
    """
    dlog f = df / f in the logarithmic basis of field

    Raises:
        ZeroArgument: if f is zero
    """
    if not f:
        raise ZeroArgument("dlog of zero")
    inverse = field.inv(f)
    return LogForm(field, 1, {
        (label,): field.mul(value, inverse) for label, value in field.differential(f).items()
    })


def dlog_wedge(field, arguments, coefficient=None):
    """coefficient * dlog f_1 ^ ... ^ dlog f_k"""
    result = LogForm.term(field, field.one() if coefficient is None else coefficient)
    for argument in arguments:
        result = result.wedge(dlog_expand(field, argument))
    return result
