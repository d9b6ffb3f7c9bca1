"""时间推进"""

from .stepper import StepperConfig, TrajectorySummary, run, step
