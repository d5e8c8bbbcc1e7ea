"""Numerov shooting eigensolver for one-dimensional and radial Schrödinger equations."""

from .eigensolver import (
    EigenSolution,
    ScanConfig,
    count_nodes,
    default_delta_e,
    normalize,
    refine_bisection,
    scan_brackets,
    solve_states,
)
from .errors import (
    ConfigError,
    ConvergenceError,
    DegenerateSolution,
    DomainError,
    EnergyOutsideWell,
    MatchPointNode,
    NumerovError,
    PartialResultError,
    SolveError,
    StepFailure,
)
from .potentials import (
    CustomTable,
    Harmonic,
    HydrogenRadial,
    effective_potential,
    eps_to_ev,
    harmonic_k2,
    hydrogen_coeffs,
    load_potential_table,
    potential_minimum,
)
from .recurrence import (
    GeneralizedCoeffs,
    NormalFormCoeffs,
    StepTriple,
    central_derivative,
    normal_form_q,
    numerov_step,
    numerov_step_general,
)
from .shooting import (
    Grid,
    ShootingConfig,
    ShootingResult,
    find_match_index,
    integrate_left,
    integrate_right,
    mismatch,
    rescale_left,
)

__version__ = "0.1.0"
