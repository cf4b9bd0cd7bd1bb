"""Tests for Setting"""

import pytest

from kato_milne.exceptions import ConfigurationError
from kato_milne.settings import Setting


@pytest.mark.unit
def test_unknown_type_falls_back_to_default():
    """Test that an unknown setting type uses the default rules"""
    assert Setting('colour').setting_type == 'default'
    assert Setting().setting_type == 'default'
    assert Setting('default').setget(10 ** 9) == 10 ** 9


@pytest.mark.unit
def test_get_value_before_validation():
    """Test that get_value is None until a value is validated"""
    setting = Setting('bound')
    assert setting.get_value() is None
    setting.validate(3)
    assert setting.get_value() == 3


@pytest.mark.unit
def test_string_values():
    """Test that strings of decimal digits are accepted"""
    assert Setting('seed').setget(" 5 ") == 5
    assert Setting('seed').setget("+7") == 7


@pytest.mark.unit
def test_invalid_strings():
    """Test that non integer strings are rejected"""
    with pytest.raises(ConfigurationError, match="Setting 'seed': invalid integer: '1e3'"):
        Setting('seed').setget("1e3")
    with pytest.raises(ConfigurationError, match="invalid integer: ''"):
        Setting('seed').setget("")


@pytest.mark.unit
def test_invalid_types():
    """Test that None, booleans and floats are rejected"""
    with pytest.raises(ConfigurationError, match="value cannot be None"):
        Setting('bound').setget(None)
    with pytest.raises(ConfigurationError, match="expected an integer, got True"):
        Setting('bound').setget(True)
    with pytest.raises(ConfigurationError, match="expected an integer, got float"):
        Setting('bound').setget(1.5)


@pytest.mark.unit
def test_ranges():
    """Test the minimum and maximum of each setting type"""
    with pytest.raises(ConfigurationError, match="Setting 'tower': value 5 is too high. Max: 4"):
        Setting('tower').setget(5)
    with pytest.raises(ConfigurationError, match="Setting 'bound': value 0 is too low. Min: 1"):
        Setting('bound').setget(0)
    with pytest.raises(ConfigurationError, match="value 7 is too high. Max: 6"):
        Setting('teich_depth').setget(7)
    with pytest.raises(ConfigurationError, match="value 201 is too high. Max: 200"):
        Setting('count').setget(201)
    with pytest.raises(ConfigurationError, match="value -1 is too low. Min: 0"):
        Setting('seed').setget("-1")
    with pytest.raises(ConfigurationError, match="Min: 1"):
        Setting('max_candidates').setget(0)


@pytest.mark.unit
def test_boundary_values():
    """Test that the range limits themselves are accepted"""
    assert Setting('tower').setget(0) == 0
    assert Setting('tower').setget(4) == 4
    assert Setting('bound').setget(64) == 64
    assert Setting('count').setget(200) == 200
