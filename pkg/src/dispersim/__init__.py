"""Photon-counting phase estimation through dispersive interferometers."""

__version__ = "0.1.0"

from .analytic import OutcomeDistribution, analytic_distribution, phase_fourier
from .fidelity import InvalidDistribution, MutualInfo, PhaseGrid, mi_grid_refinement, mutual_information
from .fourier import PhaseFourierSeries, fourier_decompose
from .oracle import (
    normalize_biphoton,
    oracle_distribution,
    spdc_distribution,
    spdc_fourier,
    spdc_joint_amplitude,
)
from .phase import DispersionParams, DispersionShape, dispersion_shape, phase_shift
from .quadrature import NonConvergence, QuadratureSpec, integrate_1d, integrate_2d
from .states import CaseId, CrystalParams, case_catalog, get_case
from .sweep import SweepConfig, SweepTable, emit_csv, figure_preset, parse_config, run_sweep

__all__ = [
    "CaseId",
    "CrystalParams",
    "DispersionParams",
    "DispersionShape",
    "InvalidDistribution",
    "MutualInfo",
    "NonConvergence",
    "OutcomeDistribution",
    "PhaseFourierSeries",
    "PhaseGrid",
    "QuadratureSpec",
    "SweepConfig",
    "SweepTable",
    "analytic_distribution",
    "case_catalog",
    "dispersion_shape",
    "emit_csv",
    "figure_preset",
    "fourier_decompose",
    "get_case",
    "integrate_1d",
    "integrate_2d",
    "mi_grid_refinement",
    "mutual_information",
    "normalize_biphoton",
    "oracle_distribution",
    "parse_config",
    "phase_fourier",
    "phase_shift",
    "run_sweep",
    "spdc_distribution",
    "spdc_fourier",
    "spdc_joint_amplitude",
]
