"""Spectrum and quasiparticle parity switching of a split Majorana transmon.

All energies are frequencies E/h in GHz. Conversion from laboratory units
(ueV, mK) happens only at the configuration boundary, see :mod:`.units`.
"""

from .errors import ConvergenceError, DomainError, VanishingPlasmaFrequency
from .qubit_model import (
    HybridLevelSolution,
    JunctionGeometry,
    QubitParams,
    SpectrumBranches,
    excitation_spectrum,
    hybrid_level_solution,
    junction_geometry,
)
from .rates import (
    RateBreakdown,
    parity_switch_rate_excited,
    parity_switch_rate_ground,
    parity_switch_rate_matrix_form,
    sqp,
)

__version__ = "0.1.0"

__all__ = [
    "ConvergenceError",
    "DomainError",
    "HybridLevelSolution",
    "JunctionGeometry",
    "QubitParams",
    "RateBreakdown",
    "SpectrumBranches",
    "VanishingPlasmaFrequency",
    "excitation_spectrum",
    "hybrid_level_solution",
    "junction_geometry",
    "parity_switch_rate_excited",
    "parity_switch_rate_ground",
    "parity_switch_rate_matrix_form",
    "sqp",
]
