"""Analytic transmon-limit model of the split Majorana transmon.

The transmon is treated as a harmonic oscillator of frequency
``omega_p = sqrt(8 E_C E_J(f))``. Each oscillator level carries a two-fold
parity doublet (even/odd island charge, with the Majorana parity tied to it)
that is split by the charge dispersion ``omega_eo`` and mixed by the
Majorana coupling ``omega_M``.
"""

import math
import warnings
from dataclasses import dataclass, replace

from .errors import DomainError, TransmonLimitWarning, VanishingPlasmaFrequency
from .units import energy_from_microelectronvolt, temperature_from_millikelvin

DEFAULT_GAP = energy_from_microelectronvolt(161.0)
DEFAULT_TEMPERATURE = temperature_from_millikelvin(100.0)

# E_J(f) below this fraction of E_J0 + E_J1 is treated as exactly zero.
_VANISHING_EJ = 1e-12
_WARN_RATIO = 10.0


@dataclass(frozen=True)
class QubitParams:
    """Device parameters, all energies in GHz.

    Parameters
    ----------
    EC : float
        Charging energy.
    EJ0, EJ1 : float
        Josephson energies of the two junctions of the SQUID.
    EM0, EM1 : float
        Majorana couplings across junction 0 and junction 1.
    ng : float
        Dimensionless gate charge.
    flux : float
        Reduced flux ``Phi_e / Phi_0``.
    delta : float
        Superconducting gap (equal in both leads).
    temperature : float
        Thermal energy ``k_B T / h``.
    """

    EC: float
    EJ0: float
    EJ1: float
    EM0: float = 0.0
    EM1: float = 0.0
    ng: float = 0.0
    flux: float = 0.0
    delta: float = DEFAULT_GAP
    temperature: float = DEFAULT_TEMPERATURE

    def __post_init__(self):
        for name in ("EC", "EJ0", "EJ1", "EM0", "EM1", "ng", "flux", "delta", "temperature"):
            if not math.isfinite(getattr(self, name)):
                raise DomainError(f"{name} must be finite")
        if self.EC <= 0:
            raise DomainError("EC must be positive")
        if self.EJ0 < 0 or self.EJ1 < 0 or self.EJ0 + self.EJ1 <= 0:
            raise DomainError("Josephson energies must be non-negative with a positive sum")
        if self.EM0 < 0 or self.EM1 < 0:
            raise DomainError("Majorana couplings must be non-negative")
        if self.delta <= 0:
            raise DomainError("gap must be positive")
        if self.temperature <= 0:
            raise DomainError("temperature must be positive")

    @classmethod
    def from_asymmetry(cls, EC, EJ_sum, d, **kwargs):
        """Build parameters from the junction sum and asymmetry ``d``.

        ``d = (EJ0 - EJ1) / (EJ0 + EJ1)``, so ``d >= 0`` gives ``EJ0 >= EJ1``.
        """
        if not -1.0 <= d <= 1.0:
            raise DomainError(f"asymmetry must lie in [-1, 1], got {d}")
        return cls(EC=EC, EJ0=0.5 * EJ_sum * (1 + d), EJ1=0.5 * EJ_sum * (1 - d), **kwargs)

    @property
    def EJ_sum(self):
        return self.EJ0 + self.EJ1

    @property
    def asymmetry(self):
        return (self.EJ0 - self.EJ1) / (self.EJ0 + self.EJ1)

    @property
    def EM(self):
        """Mean Majorana coupling."""
        return 0.5 * (self.EM0 + self.EM1)

    def replace(self, **changes):
        return replace(self, **changes)


@dataclass(frozen=True)
class JunctionGeometry:
    EJ_eff: float
    d: float
    theta: float
    omega_p: float

    @property
    def vanishing(self):
        return self.omega_p == 0.0


def junction_geometry(p: QubitParams) -> JunctionGeometry:
    """Flux-tuned Josephson energy, phase offset and plasma frequency.

    Uses ``E_J(f) = (EJ0 + EJ1) sqrt(cos^2(pi f) + d^2 sin^2(pi f))``, finite
    at half flux, and ``theta = atan2(d sin(pi f), cos(pi f))``.
    """
    d = p.asymmetry
    s, c = math.sin(math.pi * p.flux), math.cos(math.pi * p.flux)
    ej = p.EJ_sum * math.sqrt(c * c + d * d * s * s)
    if ej <= _VANISHING_EJ * p.EJ_sum:
        ej = 0.0
    theta = math.atan2(d * s, c)
    return JunctionGeometry(EJ_eff=ej, d=d, theta=theta, omega_p=math.sqrt(8.0 * p.EC * ej))


def _require_transmon(EC, EJ_eff):
    if EJ_eff == 0.0:
        raise VanishingPlasmaFrequency("plasma frequency vanishes (E_J(f) = 0)")
    if not (EC > 0 and EJ_eff > 0):
        raise DomainError(f"need positive EC and E_J, got EC={EC}, EJ={EJ_eff}")
    ratio = EJ_eff / EC
    if ratio < 1.0:
        raise DomainError(f"E_J/E_C = {ratio:.3g} is outside the transmon regime")
    if ratio < _WARN_RATIO:
        warnings.warn(
            f"E_J/E_C = {ratio:.3g}; asymptotic transmon formulas are rough here",
            TransmonLimitWarning,
            stacklevel=3,
        )


def _cos_two_pi(x):
    # exact zeros at quarter-integer gate charge
    r = abs(x - round(x))
    if r == 0.25:
        return 0.0
    return math.cos(2.0 * math.pi * r)


def even_odd_splitting(EC: float, EJ_eff: float, ng: float) -> float:
    """Signed even-odd ground state splitting ``eps_0 cos(2 pi n_g)``."""
    _require_transmon(EC, EJ_eff)
    ratio = 8.0 * EJ_eff / EC
    omega_p = math.sqrt(8.0 * EC * EJ_eff)
    eps0 = 4.0 * math.sqrt(2.0 / math.pi) * omega_p * ratio**0.25 * math.exp(-math.sqrt(ratio))
    return eps0 * _cos_two_pi(ng)


def excited_even_odd_splitting(EC: float, EJ_eff: float, ng: float) -> float:
    """Charge dispersion of the first excited level, ``-4 omega_eo omega_p / E_C``."""
    omega_eo = even_odd_splitting(EC, EJ_eff, ng)
    return -4.0 * omega_eo * math.sqrt(8.0 * EC * EJ_eff) / EC


def majorana_splitting(EM0, EM1, f, theta, *, level=0, ec_over_wp=None):
    """Majorana-induced splitting ``2 <H_M>`` of a parity doublet.

    Leading order by default. Passing ``ec_over_wp = E_C/omega_p`` applies
    the zero-point factor ``1 - (level + 1/2) E_C/omega_p`` of the diagonal
    ``cos(phi_j/2)`` matrix element.
    """
    half = 0.5 * math.pi * f
    value = 2.0 * (EM0 * math.cos(half - 0.5 * theta) + EM1 * math.cos(half + 0.5 * theta))
    if ec_over_wp is not None:
        value *= 1.0 - (level + 0.5) * ec_over_wp
    return value


@dataclass(frozen=True)
class HybridLevelSolution:
    """Parity-mixed doublet of one oscillator level.

    ``(a_plus, b_plus)`` and ``(a_minus, b_minus)`` are the amplitudes on the
    (even, odd) charge-parity states of the eigenvectors with energies
    ``+omega_eo_prime/2`` and ``-omega_eo_prime/2``.
    """

    level: int
    omega_eo: float
    omega_M: float
    omega_eo_prime: float
    a_plus: float
    b_plus: float
    a_minus: float
    b_minus: float
    degenerate: bool = False

    @property
    def energy_plus(self):
        return 0.5 * self.omega_eo_prime

    @property
    def energy_minus(self):
        return -0.5 * self.omega_eo_prime

    @property
    def weight_zero(self):
        """``(2 a+ b+)^2``: weight of zero-frequency parity switching."""
        return (2.0 * self.a_plus * self.b_plus) ** 2

    @property
    def weight_splitting(self):
        """``(a+ b- + a- b+)^2``: weight of switching across the doublet."""
        return (self.a_plus * self.b_minus + self.a_minus * self.b_plus) ** 2


def hybrid_level_solution(level: int, omega_eo: float, omega_M: float) -> HybridLevelSolution:
    """Diagonalize ``1/2 [[omega_eo, omega_M], [omega_M, -omega_eo]]``.

    The amplitudes follow ``a± ∝ omega_eo ± omega'``, ``b± ∝ omega_M``, but
    each vector is computed from whichever expression does not cancel, so the
    result stays accurate for ``|omega_M| << |omega_eo|``. At ``omega_M = 0``
    this gives the continuous limits of those expressions; at
    ``omega_eo = omega_M = 0`` the pure parity states are returned and
    ``degenerate`` is set.
    """
    prime = math.hypot(omega_eo, omega_M)
    if prime == 0.0:
        return HybridLevelSolution(level, omega_eo, omega_M, 0.0, 1.0, 0.0, 0.0, 1.0, True)
    sign_m = -1.0 if omega_M < 0 else 1.0
    if omega_eo >= 0:
        s = omega_eo + prime
        norm = math.hypot(omega_M, s)
        a_p, b_p = s / norm, omega_M / norm
        a_m, b_m = -abs(omega_M) / norm, sign_m * s / norm
    else:
        t = prime - omega_eo
        norm = math.hypot(omega_M, t)
        a_m, b_m = -t / norm, omega_M / norm
        a_p, b_p = abs(omega_M) / norm, sign_m * t / norm
    return HybridLevelSolution(level, omega_eo, omega_M, prime, a_p, b_p, a_m, b_m)


def _half_angle_check(m, n, EC, omega_p):
    if not (0 <= m <= 3 and 0 <= n <= 3):
        raise DomainError(f"levels must lie in 0..3, got m={m}, n={n}")
    if not (EC > 0 and omega_p > 0):
        raise DomainError("need positive EC and omega_p")
    lam2 = EC / omega_p
    if lam2 >= 0.25:
        raise DomainError(f"E_C/omega_p = {lam2:.3g} too large for the expansion")
    return lam2


def _half_angle_element(m, n, lam2, along, across):
    # second order in lambda = sqrt(E_C/omega_p) of 1/2 (e^{i a} D(i lambda) +- e^{-i a} D(-i lambda))
    k = max(m, n)
    gap = abs(m - n)
    if gap == 0:
        return (1.0 - (n + 0.5) * lam2) * along
    if gap == 1:
        return math.sqrt(lam2 * k) * across
    if gap == 2:
        return -0.5 * lam2 * math.sqrt(k * (k - 1)) * along
    return 0.0


def cos_half_matrix_element(m, n, phase_shift, EC, omega_p) -> float:
    """``<m| cos((phase_shift + phi)/2) |n>`` to order ``E_C/omega_p``."""
    lam2 = _half_angle_check(m, n, EC, omega_p)
    half = 0.5 * phase_shift
    return _half_angle_element(m, n, lam2, math.cos(half), -math.sin(half))


def sin_half_matrix_element(m, n, phase_shift, EC, omega_p) -> float:
    """``<m| sin((phase_shift + phi)/2) |n>`` to order ``E_C/omega_p``."""
    lam2 = _half_angle_check(m, n, EC, omega_p)
    half = 0.5 * phase_shift
    return _half_angle_element(m, n, lam2, math.sin(half), math.cos(half))


@dataclass(frozen=True)
class SpectrumBranches:
    """The four 0->1 transition frequencies, labelled initial->final doublet branch."""

    pp: float
    pm: float
    mp: float
    mm: float
    base: float
    ground: HybridLevelSolution
    excited: HybridLevelSolution

    def as_tuple(self):
        return (self.pp, self.pm, self.mp, self.mm)


def level_solutions(p: QubitParams, *, majorana_correction=False):
    """Ground and first-excited doublets for ``p``; returns ``(geometry, ground, excited)``."""
    geo = junction_geometry(p)
    _require_transmon(p.EC, geo.EJ_eff)
    ec_over_wp = p.EC / geo.omega_p if majorana_correction else None
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", TransmonLimitWarning)
        w0 = even_odd_splitting(p.EC, geo.EJ_eff, p.ng)
        w1 = excited_even_odd_splitting(p.EC, geo.EJ_eff, p.ng)
    m0 = majorana_splitting(p.EM0, p.EM1, p.flux, geo.theta, level=0, ec_over_wp=ec_over_wp)
    m1 = majorana_splitting(p.EM0, p.EM1, p.flux, geo.theta, level=1, ec_over_wp=ec_over_wp)
    return geo, hybrid_level_solution(0, w0, m0), hybrid_level_solution(1, w1, m1)


def excitation_spectrum(p: QubitParams, *, anharmonic=False, majorana_correction=False):
    """Four-branch 0->1 excitation spectrum.

    The bare transition is ``omega_p`` (``omega_p - E_C`` with
    ``anharmonic=True``); the branch from doublet member ``k`` of level 0 to
    member ``k'`` of level 1 sits at ``base + (k' omega'_1 - k omega'_0)/2``.
    """
    geo, ground, excited = level_solutions(p, majorana_correction=majorana_correction)
    base = geo.omega_p - (p.EC if anharmonic else 0.0)
    w0, w1 = ground.omega_eo_prime, excited.omega_eo_prime
    return SpectrumBranches(
        pp=base + 0.5 * (w1 - w0),
        pm=base + 0.5 * (-w1 - w0),
        mp=base + 0.5 * (w1 + w0),
        mm=base + 0.5 * (-w1 + w0),
        base=base,
        ground=ground,
        excited=excited,
    )
