"""Rabi profiles, Rabi spectra and exact dynamics of driven discrete-level systems."""

__version__ = "0.1.0"

from .analytic import (
    RabiProfile,
    Regime,
    RwaPrediction,
    classify_regime,
    extreme_coupling_period,
    profile_height,
    rwa_population,
    rwa_prediction,
    transfer_period,
)
from .core import Drive, LevelSystem, TransitionParams, system_to_dict, transition_params, validate_system
from .dynamics import (
    AmplitudeState,
    IntegratorOptions,
    PopulationTrace,
    fit_sinusoid,
    integrate,
    integrate_sequence,
    measured_transfer_period,
    peak_population,
)
from .pathway import PathResult, PathStep, fastest_path
from .spectra import (
    RabiSpectrum,
    ValidityReport,
    max_clean_intensity,
    min_transfer_time,
    rabi_spectrum,
    validity_report,
)

__all__ = [
    "AmplitudeState",
    "Drive",
    "IntegratorOptions",
    "LevelSystem",
    "PathResult",
    "PathStep",
    "PopulationTrace",
    "RabiProfile",
    "RabiSpectrum",
    "Regime",
    "RwaPrediction",
    "TransitionParams",
    "ValidityReport",
    "classify_regime",
    "extreme_coupling_period",
    "fastest_path",
    "fit_sinusoid",
    "integrate",
    "integrate_sequence",
    "max_clean_intensity",
    "measured_transfer_period",
    "min_transfer_time",
    "peak_population",
    "profile_height",
    "rabi_spectrum",
    "rwa_population",
    "rwa_prediction",
    "system_to_dict",
    "transfer_period",
    "transition_params",
    "validate_system",
    "validity_report",
]
