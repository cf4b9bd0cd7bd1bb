"""pytest configuration and shared fixtures."""

import pytest


@pytest.fixture
def tower():
    """The tower F_2(t1)(x)."""
    from kato_milne import TowerDesc
    return TowerDesc(1)


@pytest.fixture
def t(tower):
    """The ground variable t1."""
    return tower.gen(1)


@pytest.fixture
def x(tower):
    """The top variable x."""
    return tower.gen(2)


@pytest.fixture
def top_field(tower):
    """F_2(t1)(x) as a form field."""
    from kato_milne.forms import TowerField
    return TowerField(tower, 2)


@pytest.fixture
def ground_field(tower):
    """F_2(t1) as a form field."""
    from kato_milne.forms import TowerField
    return TowerField(tower, 1)


@pytest.fixture
def make_place(tower):
    """Build a finite place of F_2(t1)(x) from polynomial text."""
    from kato_milne.parser import parse_element
    from kato_milne.place import FinitePlace
    from kato_milne.polyring import Poly

    def build(text, **kwargs):
        return FinitePlace(Poly.from_element(tower, parse_element(text, tower, 2), 2), **kwargs)
    return build


@pytest.fixture
def session(tower):
    """A session over F_2(t1)(x) with default settings."""
    from kato_milne import Session
    return Session(tower, seed=0, bound=8, teich_depth=4, max_candidates=200000)
