from .bruteforce import brute_force_bisim, check_witness
from .checks import (
    branching_step_bisim, check, pomset_bisim_bounded, rooted_branching_step_bisim, strong_step_bisim,
)
from .quotient import quotient
from .verdict import Counterexample, EquivalenceVerdict, replay

__all__ = [
    "Counterexample", "EquivalenceVerdict", "branching_step_bisim", "brute_force_bisim", "check",
    "check_witness", "pomset_bisim_bounded", "quotient", "replay", "rooted_branching_step_bisim",
    "strong_step_bisim",
]
