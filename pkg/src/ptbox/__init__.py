"""Trapped Bessel modes with a moving wall, their complex-shifted (PT-symmetric)
continuation, and numerical checks of both."""

__version__ = "0.1.0"

from .errors import (
    BranchError,
    ConvergenceError,
    DomainError,
    InstabilityError,
    NonConvergence,
    PTBoxError,
    ToleranceFailure,
    WallCollapse,
    WindowError,
)
from .fullline import FullLineMode, ladder, znojil_energy, znojil_psi
from .modes import ConjMode, GridField, ModeSpec, ShiftConfig, normalize, quantize, wavefunction
from .observables import ObservableReport, expectation_report
from .pdeverify import EvolutionConfig, analytic_residual, evolve_cn
from .specfun import bessel_j, bessel_roots, laguerre
from .trapdyn import FrequencySchedule, TrapSchedule, solve_scale

__all__ = [
    "BranchError", "ConjMode", "ConvergenceError", "DomainError", "EvolutionConfig",
    "FrequencySchedule", "FullLineMode", "GridField", "InstabilityError", "ModeSpec",
    "NonConvergence", "ObservableReport", "PTBoxError", "ShiftConfig", "ToleranceFailure",
    "TrapSchedule", "WallCollapse", "WindowError", "analytic_residual", "bessel_j",
    "bessel_roots", "evolve_cn", "expectation_report", "ladder", "laguerre", "normalize",
    "quantize", "solve_scale", "wavefunction", "znojil_energy", "znojil_psi",
]
