"""Asymptotic preserving IMEX finite volume solver for the low Mach barotropic Euler system."""

from ._lowmach import (
    BlowUpError,
    ConfigError,
    DomainError,
    HelmholtzMethod,
    ModelParams,
    PeriodicGrid,
    SolverError,
    __version__,
    compute_eoc,
    entropy_conservative_flux,
    entropy_quantities,
    global_energies,
    initial_state,
    pressure,
    pressure_derivative,
    rho_gamma_mean,
    run_eoc,
    run_single,
    simulate,
    solve_helmholtz,
    tableau,
)

__all__ = [
    "BlowUpError",
    "ConfigError",
    "DomainError",
    "HelmholtzMethod",
    "ModelParams",
    "PeriodicGrid",
    "SolverError",
    "__version__",
    "compute_eoc",
    "entropy_conservative_flux",
    "entropy_quantities",
    "global_energies",
    "initial_state",
    "pressure",
    "pressure_derivative",
    "rho_gamma_mean",
    "run_eoc",
    "run_single",
    "simulate",
    "solve_helmholtz",
    "tableau",
]
