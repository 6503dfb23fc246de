"""Quasiparticle parity-switching rates of the hybrid ground and excited doublets.

Rates are returned in the same GHz frequency units as the energies that
enter them; no factor of ``2 pi`` or ``1e9`` is applied here.

The zero-frequency spectral density diverges logarithmically, so it is
evaluated at a small positive ``omega_floor`` (default ``1e-4 T``). Any rate
whose value depends on that floor carries ``floored=True``.
"""

import math
from dataclasses import dataclass

from .errors import DomainError, VanishingPlasmaFrequency
from .qubit_model import (
    QubitParams,
    hybrid_level_solution,
    level_solutions,
    sin_half_matrix_element,
)
from .specfun import bessel_k0_scaled

DEFAULT_FLOOR_FRACTION = 1e-4


def default_omega_floor(T):
    return DEFAULT_FLOOR_FRACTION * T


def _sqp_exact(omega, T, Delta, EJ_eff):
    # e^{w/2T} K0(|w|/2T) = [e^{x} K0(x)] e^{w/2T - x},  x = |w|/2T
    x = abs(omega) / (2.0 * T)
    return (
        16.0 * EJ_eff / math.pi
        * math.exp(-Delta / T + omega / (2.0 * T) - x)
        * bessel_k0_scaled(x)
    )


def sqp(omega: float, T: float, Delta: float, EJ_eff: float, omega_floor: float) -> float:
    """Quasiparticle current spectral density S_qp(omega).

    ``(16 E_J / pi) exp(-Delta/T) exp(omega/2T) K0(|omega|/2T)``; for
    ``|omega| < omega_floor`` the magnitude is raised to ``omega_floor`` while
    the sign of ``omega`` is kept in the exponential.
    """
    if not T > 0:
        raise DomainError(f"temperature must be positive, got {T}")
    if not Delta > 0:
        raise DomainError(f"gap must be positive, got {Delta}")
    if not omega_floor > 0:
        raise DomainError(f"omega_floor must be positive, got {omega_floor}")
    if abs(omega) < omega_floor:
        omega = math.copysign(omega_floor, omega)
    return _sqp_exact(omega, T, Delta, EJ_eff)


def sqp_floored(omega, omega_floor):
    """Whether :func:`sqp` replaces ``omega`` by the floor."""
    return abs(omega) < omega_floor


@dataclass(frozen=True)
class RateBreakdown:
    """Parity-switching rate ``gamma = prefactor (weight_0 s_at_0 + weight_w s_at_w)``."""

    prefactor: float
    weight_0: float
    weight_w: float
    s_at_0: float
    s_at_w: float
    gamma: float
    omega_eo: float
    omega_M: float
    omega_eo_prime: float
    floored: bool


def _flux_prefactor(p, EJ_eff):
    # (EJ0+EJ1)/(2 E_J(f)) * (1 - omega_p(f)^2/omega_p(0)^2), omega_p^2 ∝ E_J
    return p.EJ_sum / (2.0 * EJ_eff) * (1.0 - EJ_eff / p.EJ_sum)


def _mixing_weights(omega_eo, omega_M):
    total = omega_eo * omega_eo + omega_M * omega_M
    if total == 0.0:
        return 0.0, 1.0
    w0 = omega_M * omega_M / total
    return w0, omega_eo * omega_eo / total


def _spectral_terms(p, EJ_eff, prime, omega_floor):
    s0 = sqp(0.0, p.temperature, p.delta, EJ_eff, omega_floor)
    # S_qp is finite at any positive frequency; the floor is for omega = 0 only
    if prime > 0.0:
        sqp(prime, p.temperature, p.delta, EJ_eff, omega_floor)  # validates T, Delta
        sw = _sqp_exact(prime, p.temperature, p.delta, EJ_eff)
    else:
        sw = s0
    return s0, sw


def _rate(p, level, omega_floor):
    if omega_floor is None:
        omega_floor = default_omega_floor(p.temperature)
    geo, ground, excited = level_solutions(p)
    if geo.EJ_eff == 0.0:  # pragma: no cover - rejected in level_solutions
        raise VanishingPlasmaFrequency("plasma frequency vanishes")
    sol = ground if level == 0 else excited
    prefactor = _flux_prefactor(p, geo.EJ_eff)
    w0, ww = _mixing_weights(sol.omega_eo, sol.omega_M)
    s0, sw = _spectral_terms(p, geo.EJ_eff, sol.omega_eo_prime, omega_floor)
    gamma = prefactor * (w0 * s0 + ww * sw)
    floored = w0 > 0.0 or sol.omega_eo_prime == 0.0
    return RateBreakdown(
        prefactor, w0, ww, s0, sw, gamma, sol.omega_eo, sol.omega_M, sol.omega_eo_prime, floored
    )


def parity_switch_rate_ground(p: QubitParams, omega_floor=None) -> RateBreakdown:
    """Parity-switching rate out of the hybrid ground doublet."""
    return _rate(p, 0, omega_floor)


def parity_switch_rate_excited(p: QubitParams, omega_floor=None) -> RateBreakdown:
    """Parity-switching rate out of the first excited doublet.

    Same structure as the ground rate with the excited-level charge
    dispersion ``-4 omega_eo omega_p / E_C`` in place of ``omega_eo``.
    """
    return _rate(p, 1, omega_floor)


def parity_switch_rate_matrix_form(p: QubitParams, omega_floor=None) -> float:
    """Ground rate assembled from explicit ``sin(phi_j/2)`` matrix elements.

    Evaluates ``sum_j (E_Jj/E_J(f)) |<0|sin(phi_j/2)|0>|^2`` with the
    expanded oscillator elements and mixes the two spectral terms with the
    doublet amplitudes ``(2a+b+)^2`` and ``(a+b- + a-b+)^2``. This shares no
    algebra with the closed form in :func:`parity_switch_rate_ground`.
    """
    if omega_floor is None:
        omega_floor = default_omega_floor(p.temperature)
    geo, ground, _ = level_solutions(p)
    sol = hybrid_level_solution(0, ground.omega_eo, ground.omega_M)
    phases = (math.pi * p.flux - geo.theta, math.pi * p.flux + geo.theta)
    junctions = (p.EJ0, p.EJ1)
    qubit = sum(
        ej / geo.EJ_eff * sin_half_matrix_element(0, 0, phi, p.EC, geo.omega_p) ** 2
        for ej, phi in zip(junctions, phases)
    )
    s0, sw = _spectral_terms(p, geo.EJ_eff, sol.omega_eo_prime, omega_floor)
    return qubit * (sol.weight_zero * s0 + sol.weight_splitting * sw)
