"""命令包"""

from .base import BaseCommand
from .check import CheckCommand
from .convergence import ConvergenceCommand
from .regime import ClassifyCommand, LifespanCommand
from .simulate import SimulateCommand, run_trajectory
from .sweep import SweepCommand

__all__ = [
    'BaseCommand', 'CheckCommand', 'ClassifyCommand', 'ConvergenceCommand',
    'LifespanCommand', 'SimulateCommand', 'SweepCommand', 'run_trajectory',
]
