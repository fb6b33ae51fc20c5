"""Cournot equilibria for mixed quantum/classical computing markets under energy caps."""

__version__ = "0.1.0"

from .closed_form import (
    BlockInverse,
    GroupEquilibrium,
    HomogeneousInverse,
    TwoGroupParams,
    assemble_inverse,
    block_inverse,
    expand_two_group,
    homogeneous_equilibrium,
    homogeneous_inverse,
    profitability_margin,
    two_group_equilibrium,
)
from .energy import (
    ClampMode,
    ConstrainedEquilibrium,
    EnergyKind,
    EnergyModel,
    constrained_equilibrium,
    equilibrium_energy,
    power,
    quantity_cap,
)
from .errors import (
    CournotError,
    DegenerateDenominator,
    DomainError,
    InvalidBracket,
    NoConvergence,
    NoSignChange,
    SingularMatrix,
)
from .hardware import (
    HardwareConstants,
    HardwareKind,
    algorithm_energy,
    asymptotic_quantities,
    critical_scale,
    hardware_model,
)
from .market import (
    Equilibrium,
    MarketParams,
    build_gamma,
    foc_residual,
    is_diagonally_dominant,
    prices,
    profits,
    solve_equilibrium,
)
from .numerics import Bracket, bisect, central_diff, linsolve
