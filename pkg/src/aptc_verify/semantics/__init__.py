from .constraints import apply_async_constraints
from .lts import TICK, StepLabel, StepLTS, hide, renumber
from .sos import TERMINATED, StepSemantics, build_lts, step_outgoing

__all__ = [
    "TICK", "TERMINATED", "StepLabel", "StepLTS", "StepSemantics",
    "apply_async_constraints", "build_lts", "hide", "renumber", "step_outgoing",
]
