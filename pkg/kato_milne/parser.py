"""
Pratt parser for element, place and class text.

Elements use t1, ..., tK, x, integer literals (read modulo 2), `+`, `-`,
`*`, `/`, `^` for powers and parentheses. Classes are sums of terms
`(<element>) dlog(<element>) ^ ... ^ dlog(<element>)`; between two forms
`^` is the wedge product and a coefficient may precede a dlog without `*`.
"""

import re
from typing import Any, NamedTuple

from .cohomology import CohomClass
from .exceptions import (
    DivisionByZero, ExpressionSyntaxError, KatoMilneError, PlaceNotClassified, ZeroDlogArgument,
)
from .forms import LogForm, TowerField, dlog_expand
from .place import FinitePlace, InfinitePlace
from .polyring import INCONCLUSIVE, PlaceVerdict, Poly, classify_place, specialization_check

__all__ = [
    'Token', 'tokenize', 'parse_element', 'parse_place', 'parse_class',
    'format_element', 'format_form',
]

TOKENS = {
    "name": r"[A-Za-z_][A-Za-z0-9_]*",
    "num": r"\d+",
    "lpar": r"\(",
    "rpar": r"\)",
    "op": r"[+\-*/^]",
    "skip": r"\s+",
    "error": r".",
}

_REGEX = re.compile("|".join(f"(?P<{name}>{text})" for name, text in TOKENS.items()))


class Token(NamedTuple):
    type: str
    value: Any
    where: int


def tokenize(text):
    """
    Split text into tokens

    Raises:
        ExpressionSyntaxError: on a character outside the grammar
    """
    for mo in _REGEX.finditer(text):
        kind = mo.lastgroup
        value = mo.group()
        if kind == "skip":
            continue
        if kind == "error":
            raise ExpressionSyntaxError(f"Unknown symbol '{value}'", mo.start())
        if kind == "num":
            value = int(value)
        elif kind in ("lpar", "rpar", "op"):
            kind = value
        elif value == "dlog":
            kind = "dlog"
        yield Token(kind, value, mo.start())


class _Context(NamedTuple):
    tower: Any
    field: TowerField
    names: dict


class Symbol:
    id = ""
    lbp = 0

    def __init__(self, parser, value=None, where=None):
        self.parser = parser
        self.value = self.id if value is None else value
        self.where = where
        self.first = None
        self.second = None

    def nud(self):
        raise ExpressionSyntaxError(f"Unexpected '{self.value}'", self.where)

    def led(self, left):
        raise ExpressionSyntaxError(f"Unexpected '{self.value}'", self.where)

    def eval(self, ctx):
        raise NotImplementedError

    def error(self, message):
        return ExpressionSyntaxError(message, self.where)


class Literal(Symbol):
    def nud(self):
        return self


class Number(Literal):
    def eval(self, ctx):
        return ctx.tower.element(self.value % 2)


class Reference(Literal):
    def eval(self, ctx):
        if self.value not in ctx.names:
            raise self.error(f"Unknown variable '{self.value}' over {ctx.field.describe()}")
        return ctx.tower.gen(ctx.names[self.value])


def _as_form(ctx, value):
    if isinstance(value, LogForm):
        return value
    return LogForm.term(ctx.field, value)


class Infix(Symbol):
    right_assoc = False

    def led(self, left):
        self.first = left
        self.second = self.parser.expression(self.lbp - int(self.right_assoc))
        return self


class Plus(Infix):
    def eval(self, ctx):
        left, right = self.first.eval(ctx), self.second.eval(ctx)
        if isinstance(left, LogForm) or isinstance(right, LogForm):
            left, right = _as_form(ctx, left), _as_form(ctx, right)
            if left.degree != right.degree:
                raise self.error(f"Cannot add forms of degree {left.degree} and {right.degree}")
            return left + right
        return left + right


class Minus(Plus):
    """Subtraction and negation coincide with addition and identity"""

    def nud(self):
        self.first = self.parser.expression(90)
        return self

    def eval(self, ctx):
        if self.second is None:
            return self.first.eval(ctx)
        return super().eval(ctx)


class Times(Infix):
    def eval(self, ctx):
        left, right = self.first.eval(ctx), self.second.eval(ctx)
        return _multiply(self, ctx, left, right)


def _multiply(symbol, ctx, left, right):
    if isinstance(left, LogForm) and isinstance(right, LogForm):
        raise symbol.error("Use '^' for the wedge product of forms")
    if isinstance(left, LogForm):
        return left.scale(right)
    if isinstance(right, LogForm):
        return right.scale(left)
    return left * right


class Divide(Infix):
    def eval(self, ctx):
        left, right = self.first.eval(ctx), self.second.eval(ctx)
        if isinstance(right, LogForm):
            raise self.error("Cannot divide by a form")
        if not right:
            raise DivisionByZero(f"Division by zero at position {self.where}")
        inverse = ctx.tower.one / right
        if isinstance(left, LogForm):
            return left.scale(inverse)
        return left * inverse


class Caret(Infix):
    """Power of an element by an integer literal, or wedge of two forms"""

    right_assoc = True

    def eval(self, ctx):
        left = self.first.eval(ctx)
        if isinstance(left, LogForm):
            right = self.second.eval(ctx)
            if not isinstance(right, LogForm):
                raise self.error("The right side of a wedge must be a form")
            return left.wedge(right)
        if not isinstance(self.second, Number):
            raise self.error("Exponents must be integer literals")
        return left ** self.second.value


class Dlog(Symbol):
    """dlog(f), also as the right factor of a coefficient written before it"""

    def _argument(self):
        parser = self.parser
        parser.advance("(")
        argument = parser.expression(0)
        parser.advance(")")
        return argument

    def nud(self):
        self.first = self._argument()
        return self

    def led(self, left):
        product = Times(self.parser, "*", self.where)
        product.first = left
        product.second = Dlog(self.parser, "dlog", self.where)
        product.second.first = self._argument()
        return product

    def eval(self, ctx):
        argument = self.first.eval(ctx)
        if isinstance(argument, LogForm):
            raise self.error("The argument of dlog must be an element")
        if not argument:
            raise ZeroDlogArgument(f"dlog(0) at position {self.where}")
        return dlog_expand(ctx.field, argument)


class Paren(Symbol):
    def nud(self):
        expression = self.parser.expression(0)
        self.parser.advance(")")
        return expression


class End(Symbol):
    pass


class Parser:
    """Top down operator precedence parser over a token stream"""

    def __init__(self):
        self.symbol_table = {}
        self.tokens = iter([])
        self.token = None

    def define(self, sid, lbp=0, symbol_class=Symbol):
        self.symbol_table[sid] = type(symbol_class.__name__, (symbol_class,), {"id": sid, "lbp": lbp})

    def expression(self, rbp):
        token = self.token
        self.advance()
        left = token.nud()
        while rbp < self.token.lbp:
            token = self.token
            self.advance()
            left = token.led(left)
        return left

    def advance(self, value=None):
        symbol = self.token
        if value and value != symbol.id:
            raise ExpressionSyntaxError(f"Expected '{value}'", symbol.where)
        try:
            token = next(self.tokens)
        except StopIteration:
            self.token = self.symbol_table["end"](self, where=self._length)
            return self.token
        symbol_class = self.symbol_table.get(token.type)
        if symbol_class is None:
            raise ExpressionSyntaxError(f"Unknown symbol '{token.value}'", token.where)
        self.token = symbol_class(self, token.value, token.where)
        return self.token

    def parse(self, text):
        """
        Parse text into a symbol tree

        Raises:
            ExpressionSyntaxError: with the offending position
        """
        try:
            self._length = len(text)
            self.tokens = tokenize(text)
            self.token = None
            self.advance()
            if isinstance(self.token, End):
                raise ExpressionSyntaxError("Empty expression", 0)
            tree = self.expression(0)
            if not isinstance(self.token, End):
                raise ExpressionSyntaxError(f"Unexpected '{self.token.value}'", self.token.where)
            return tree
        finally:
            self.tokens = iter([])
            self.token = None


expr_parser = Parser()
expr_parser.define("end", 0, End)
expr_parser.define(")")
expr_parser.define("+", 10, Plus)
expr_parser.define("-", 10, Minus)
expr_parser.define("*", 20, Times)
expr_parser.define("/", 20, Divide)
expr_parser.define("dlog", 20, Dlog)
expr_parser.define("^", 30, Caret)
expr_parser.define("(", 0, Paren)
expr_parser.define("num", 0, Number)
expr_parser.define("name", 0, Reference)


def _context(tower, level):
    if not 0 <= level <= tower.top:
        raise KatoMilneError(f"Invalid level {level} for {tower!r}")
    names = {tower.name(label): label for label in tower.labels(level)}
    return _Context(tower, TowerField(tower, level), names)


def parse_element(text, tower, level):
    """
    Parse an element of the tower field at the given level

    Args:
        text (str): element text
        tower (TowerDesc): the tower
        level (int): largest label allowed in the text

    Returns:
        FracElement: the canonical element

    Raises:
        ExpressionSyntaxError: on malformed text, forms or foreign variables
        DivisionByZero: on a zero denominator
    """
    ctx = _context(tower, level)
    tree = expr_parser.parse(text)
    value = tree.eval(ctx)
    if isinstance(value, LogForm):
        raise ExpressionSyntaxError("Expected an element, found a form", 0)
    return value


def parse_place(text, tower, level, bound, max_candidates=200000, inseparable_index=None, assume=False):
    """
    Parse a place of the field at the given level: `inf` or a monic
    polynomial in the top variable of that level

    A polynomial whose factor search is inconclusive is accepted when an
    F_2 specialization certifies it, or marked assumed when assume is set.

    Args:
        text (str): place text
        tower (TowerDesc): the tower
        level (int): level of the field F(x)
        bound (int): factor search bound
        max_candidates (int): factor search budget
        inseparable_index (int): admissible index for an inseparable place
        assume (bool): accept uncertified polynomials

    Returns:
        Place: the place

    Raises:
        ExpressionSyntaxError: on malformed text
        KatoMilneError: if the polynomial is reducible
        PlaceNotClassified: if irreducibility is not decided and assume is unset
    """
    if text.strip() == "inf":
        return InfinitePlace(tower, level)
    poly = Poly.from_element(tower, parse_element(text, tower, level), level)
    classified = classify_place(poly, bound, max_candidates, inseparable_index)
    if not isinstance(classified, PlaceVerdict):
        return classified
    if classified.verdict != INCONCLUSIVE:
        raise KatoMilneError(f"{text.strip()} is reducible, it has the factor {classified.factor}")
    certificate = specialization_check(poly)
    if certificate is None and not assume:
        raise PlaceNotClassified(
            f"Irreducibility of {text.strip()} is undecided after {classified.searched} candidates")
    place = FinitePlace(poly, inseparable_index=inseparable_index, assumed=certificate is None)
    place.searched = classified.searched
    place.specialization = certificate
    return place


def parse_class(text, tower):
    """
    Parse a class of H^(m+1)(F(x)) from a sum of logarithmic terms.
    dlog of an element outside the basis is expanded as df/f.

    Args:
        text (str): class text
        tower (TowerDesc): the tower, F(x) is its top level

    Returns:
        CohomClass: the class of the parsed form

    Raises:
        ExpressionSyntaxError: with the offending position
        ZeroDlogArgument: on dlog(0)
    """
    ctx = _context(tower, tower.top)
    tree = expr_parser.parse(text)
    return CohomClass(_as_form(ctx, tree.eval(ctx)))


def format_element(a, tower):
    """Canonical text of an element, read back by parse_element"""
    return tower.format(a)


def format_form(form):
    """Canonical text of a form or class, read back by parse_class"""
    return getattr(form, 'representative', form).text()
