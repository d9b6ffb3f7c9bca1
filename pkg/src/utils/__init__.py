"""工具包"""

from .logger import logger
from . import errors

__all__ = ['logger', 'errors']
