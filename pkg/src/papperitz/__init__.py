"""Closed-form and numerical solutions of
(1+z^2)^2 y'' + 2az(1+z^2) y' + 4(b+cz) y = 0."""

from .closed_form import (
    BasisMember,
    DegeneracyClass,
    DerivedParams,
    EquationParams,
    Jet2,
    derive_params,
    eval_basis,
    eval_solution,
    fit_ivp,
    wronskian,
)
from .hypergeom import (
    EvalStrategy,
    HypParams,
    SeriesControl,
    gauss_2f1,
    gauss_2f1_derivative,
    gauss_2f1_second_derivative,
    raw_series,
    select_strategy,
)
from .mobius import d2t_dz2, dt_dz, principal_power, t_to_z, z_to_t
from .oracle import (
    IntegrationControl,
    PathSpec,
    VerifyReport,
    compare_closed_numeric,
    finite_difference_jet,
    integrate_ivp,
    residual_t,
    residual_z,
)

__all__ = [
    "BasisMember", "DegeneracyClass", "DerivedParams", "EquationParams",
    "Jet2", "derive_params", "eval_basis", "eval_solution", "fit_ivp",
    "wronskian", "EvalStrategy", "HypParams", "SeriesControl", "gauss_2f1",
    "gauss_2f1_derivative", "gauss_2f1_second_derivative", "raw_series",
    "select_strategy", "d2t_dz2", "dt_dz", "principal_power", "t_to_z",
    "z_to_t", "IntegrationControl", "PathSpec", "VerifyReport",
    "compare_closed_numeric", "finite_difference_jet", "integrate_ivp",
    "residual_t", "residual_z",
]

__version__ = "0.1.0"
