"""Conversions between laboratory units and the internal GHz frequency scale.

Every energy inside the package is E/h expressed in GHz.
"""

from .errors import DomainError

#: e/h in GHz per micro-electronvolt (CODATA).
GHZ_PER_MICROELECTRONVOLT = 0.2417989242
#: k_B/h in GHz per kelvin (CODATA).
GHZ_PER_KELVIN = 20.83661912


def energy_from_microelectronvolt(x: float) -> float:
    if not x >= 0:
        raise DomainError(f"energy must be non-negative, got {x} ueV")
    return x * GHZ_PER_MICROELECTRONVOLT


def microelectronvolt_from_energy(e: float) -> float:
    if not e >= 0:
        raise DomainError(f"energy must be non-negative, got {e} GHz")
    return e / GHZ_PER_MICROELECTRONVOLT


def temperature_from_millikelvin(x: float) -> float:
    """Thermal energy k_B T / h in GHz for a temperature in mK."""
    if not x > 0:
        raise DomainError(f"temperature must be positive, got {x} mK")
    return x * GHZ_PER_KELVIN / 1000.0


def millikelvin_from_temperature(t: float) -> float:
    if not t > 0:
        raise DomainError(f"temperature must be positive, got {t} GHz")
    return t * 1000.0 / GHZ_PER_KELVIN
