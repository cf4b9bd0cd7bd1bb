"""
Numeric setting parsing and validation implementation
"""

import re
from ..exceptions import ConfigurationError


class Setting:
    """Parse and validate the integer settings of a session"""

    # Inclusive range of each setting type, None means unbounded.
    # Unknown types use the default rules. Shared by all instances, never modified.
    SETTING_TYPES = {
        'default': {
            'min': 0,
            'max': None
        },
        'tower': {
            'min': 0,
            'max': 4
        },
        'seed': {
            'min': 0,
            'max': None
        },
        'bound': {
            'min': 1,
            'max': 64
        },
        'teich_depth': {
            'min': 0,
            'max': 6
        },
        'max_candidates': {
            'min': 1,
            'max': None
        },
        'count': {
            'min': 0,
            'max': 200
        },
        'verbosity': {
            'min': 0,
            'max': None
        }
    }

    def __init__(self, setting_type=None):
        """
        Initialize a setting validator

        Args:
            setting_type:          Type of setting, from SETTING_TYPES. Default: 'default'.
        """
        self._value = None

        if setting_type is None or setting_type not in self.SETTING_TYPES:
            self.setting_type = 'default'
        else:
            self.setting_type = setting_type

    def _fail(self, message):
        raise ConfigurationError(f"Setting '{self.setting_type}': {message}")

    def validate(self, value):
        """
        Validate and parse a setting value

        Args:
            value:          int, or a string of decimal digits

        Raises:
            ConfigurationError: If the value is not an integer or out of range
        """
        if value is None:
            self._fail("value cannot be None")
        if isinstance(value, bool):
            self._fail(f"expected an integer, got {value}")
        if isinstance(value, str):
            clean_str = value.strip()
            if not re.match(r'^[+-]?[0-9]+$', clean_str):
                self._fail(f"invalid integer: '{value}'")
            value = int(clean_str)
        elif not isinstance(value, int):
            self._fail(f"expected an integer, got {type(value).__name__}")

        rules = self.SETTING_TYPES[self.setting_type]
        if rules['min'] is not None and value < rules['min']:
            self._fail(f"value {value} is too low. Min: {rules['min']}")
        if rules['max'] is not None and value > rules['max']:
            self._fail(f"value {value} is too high. Max: {rules['max']}")
        self._value = value

    def get_value(self):
        """
        Get the validated value

        Returns:
            int: the value, None if validate() hasn't been called successfully
        """
        return self._value

    def setget(self, value):
        """
        Validate a value, set it internally, and return it.

        Returns:
            int: the value

        Raises:
            ConfigurationError: If the value is invalid
        """
        self.validate(value)
        return self.get_value()
