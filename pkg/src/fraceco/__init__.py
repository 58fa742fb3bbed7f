"""Fractional-order predator-prey models with harvesting.

Submodules: ``fraccalc`` (fractional numerics), ``models`` (systems and
parameters), ``equilibria``, ``stability`` and ``harness`` (runs, sweeps,
metrics, file output).
"""

from .equilibria import EquilibriumPoint, equilibria2, equilibria3, residual, solve_e5
from .fraccalc import (
    NonFiniteStateError,
    TimeGrid,
    Trajectory,
    caputo_derivative_of_samples,
    gamma_fn,
    mittag_leffler,
    solve_caputo_ivp,
)
from .models import (
    DimParams2,
    DimParams3,
    Params2,
    Params3,
    SingularityError,
    nondim2,
    nondim3,
    rhs2,
    rhs3,
)
from .stability import StabilityReport, stability_report

__version__ = "0.1.0"
