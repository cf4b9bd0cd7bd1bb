"""
kato-milne: exact computation in the Kato-Milne cohomology of rational function fields over F_2
"""

from .core import KatoMilne, Session, CommandResult, run_command, format_report
from .exceptions import KatoMilneError
from .groundfield import TowerDesc
from .parser import parse_class, parse_element, parse_place, format_element, format_form
from .settings import Setting

__version__ = "1.0.0"
__all__ = [
    'KatoMilne',
    'Session',
    'CommandResult',
    'run_command',
    'format_report',
    'KatoMilneError',
    'TowerDesc',
    'parse_class',
    'parse_element',
    'parse_place',
    'format_element',
    'format_form',
    'Setting'
]
