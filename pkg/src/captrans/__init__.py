"""Optimal transport between non-additive measures on finite sets."""

from ._kernels import BACKEND
from .cost import (
    CostMatrix,
    GroundCost,
    ground_absdiff,
    lift_equalized,
    lift_kappa,
    lift_tiered,
    refines,
)
from .lp import LinearProgram, LPSolution, rewrite_absolute, solve
from .setfun import (
    Capacity,
    SetVector,
    Universe,
    is_additive,
    is_belief,
    maxplus,
    maxplus_inverse,
    mobius,
    mobius_inverse,
    validate_capacity,
)
from .transport import (
    TransportPlan,
    discrepancy,
    solve_bpa,
    solve_classical,
    solve_maxplus,
    solve_mobius,
    validate_plan,
)

__version__ = "0.1.0"
