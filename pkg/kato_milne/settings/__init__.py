"""
Numeric setting validation module
"""

from .setting import Setting

__all__ = ['Setting']
