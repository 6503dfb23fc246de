"""Flat ``key = value`` run configuration.

Example::

    # custom gate-charge sweep
    EC = 0.5
    EJ_sum = 10
    d = 0.1
    flux = 0.2
    T_mK = 50
    delta_ueV = 180
    axis = n_g
    grid = 0:1:101
    overlays_EM = 0, 0.05

Keys
----
EC, EJ0, EJ1, EM0, EM1, EM, ng, flux        GHz / dimensionless
EJ_sum, d                                   junction sum and asymmetry
delta_ueV | delta_GHz                       superconducting gap
T_mK | T_GHz                                temperature
axis       n_g | f | ej_over_ec | E_M | T
grid       start:stop:count  or  comma-separated values
quantity   spectrum | splittings | rate_ground | rate_excited
overlays_EM                                 comma-separated E_M values
omega_floor                                 GHz
anharmonic, exact, per_second, angular      true | false
name                                        label written to the metadata
"""

from dataclasses import dataclass, replace

import numpy as np

from .errors import DomainError
from .qubit_model import QubitParams
from .sweep import SweepSpec
from .units import energy_from_microelectronvolt, temperature_from_millikelvin

PARAM_KEYS = {"EC", "EJ0", "EJ1", "EM0", "EM1", "EM", "ng", "flux", "EJ_sum", "d"}
UNIT_KEYS = {"delta_ueV", "delta_GHz", "T_mK", "T_GHz"}
SWEEP_KEYS = {"axis", "grid", "quantity", "overlays_EM", "omega_floor", "name"}
FLAG_KEYS = {"anharmonic", "exact", "per_second", "angular"}
KNOWN_KEYS = PARAM_KEYS | UNIT_KEYS | SWEEP_KEYS | FLAG_KEYS


class ConfigError(ValueError):
    pass


@dataclass(frozen=True)
class RunConfig:
    spec: SweepSpec
    per_second: bool = False
    angular: bool = False


def parse_config_text(text: str) -> dict:
    """Parse ``key = value`` lines; ``#`` starts a comment."""
    entries = {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        key, sep, value = line.partition("=")
        key, value = key.strip(), value.strip()
        if not sep or not key:
            raise ConfigError(f"line {lineno}: expected 'key = value', got {raw!r}")
        if key not in KNOWN_KEYS:
            raise ConfigError(f"line {lineno}: unknown key {key!r}")
        if key in entries:
            raise ConfigError(f"line {lineno}: duplicate key {key!r}")
        entries[key] = value
    return entries


def read_config(path) -> dict:
    with open(path, encoding="utf-8") as fh:
        return parse_config_text(fh.read())


def _float(key, value):
    try:
        return float(value)
    except ValueError:
        raise ConfigError(f"{key}: not a number: {value!r}") from None


def _bool(key, value):
    v = value.lower()
    if v in ("true", "yes", "1", "on"):
        return True
    if v in ("false", "no", "0", "off"):
        return False
    raise ConfigError(f"{key}: expected true/false, got {value!r}")


def parse_grid(value):
    if ":" in value:
        parts = value.split(":")
        if len(parts) != 3:
            raise ConfigError(f"grid: expected start:stop:count, got {value!r}")
        start, stop = _float("grid", parts[0]), _float("grid", parts[1])
        try:
            count = int(parts[2])
        except ValueError:
            raise ConfigError(f"grid: count must be an integer, got {parts[2]!r}") from None
        if count < 1:
            raise ConfigError("grid: count must be positive")
        return tuple(float(x) for x in np.linspace(start, stop, count))
    return tuple(_float("grid", v) for v in value.split(","))


def _resolve_params(base: QubitParams, entries: dict) -> QubitParams:
    if ({"EJ_sum", "d"} & entries.keys()) and ({"EJ0", "EJ1"} & entries.keys()):
        raise ConfigError("give either EJ0/EJ1 or EJ_sum/d, not both")
    if "delta_ueV" in entries and "delta_GHz" in entries:
        raise ConfigError("give the gap in one unit only")
    if "T_mK" in entries and "T_GHz" in entries:
        raise ConfigError("give the temperature in one unit only")
    changes = {}
    for key in ("EC", "EJ0", "EJ1", "EM0", "EM1", "ng", "flux"):
        if key in entries:
            changes[key] = _float(key, entries[key])
    if "EM" in entries:
        em = _float("EM", entries["EM"])
        changes.setdefault("EM0", em)
        changes.setdefault("EM1", em)
    if "delta_ueV" in entries:
        changes["delta"] = energy_from_microelectronvolt(_float("delta_ueV", entries["delta_ueV"]))
    if "delta_GHz" in entries:
        changes["delta"] = _float("delta_GHz", entries["delta_GHz"])
    if "T_mK" in entries:
        changes["temperature"] = temperature_from_millikelvin(_float("T_mK", entries["T_mK"]))
    if "T_GHz" in entries:
        changes["temperature"] = _float("T_GHz", entries["T_GHz"])
    p = base.replace(**changes)
    if "EJ_sum" in entries or "d" in entries:
        total = _float("EJ_sum", entries["EJ_sum"]) if "EJ_sum" in entries else p.EJ_sum
        d = _float("d", entries["d"]) if "d" in entries else p.asymmetry
        p = QubitParams.from_asymmetry(
            p.EC, total, d,
            EM0=p.EM0, EM1=p.EM1, ng=p.ng, flux=p.flux, delta=p.delta, temperature=p.temperature,
        )
    return p


def resolve(preset: SweepSpec, entries: dict) -> RunConfig:
    """Apply config ``entries`` key by key on top of a preset."""
    try:
        base = _resolve_params(preset.base, entries)
        changes = {"base": base}
        if "axis" in entries:
            changes["axis"] = entries["axis"]
        if "grid" in entries:
            changes["grid"] = parse_grid(entries["grid"])
        if "quantity" in entries:
            changes["quantity"] = entries["quantity"]
        if "overlays_EM" in entries:
            values = [_float("overlays_EM", v) for v in entries["overlays_EM"].split(",")]
            changes["overlays"] = tuple({"EM0": v, "EM1": v} for v in values)
        elif {"EM", "EM0", "EM1"} & entries.keys():
            # explicit couplings replace the preset's E_M overlays
            changes["overlays"] = ({},)
        if "omega_floor" in entries:
            changes["omega_floor"] = _float("omega_floor", entries["omega_floor"])
        if "name" in entries:
            changes["name"] = entries["name"]
        if "flux" in entries:
            changes["assumptions"] = tuple(a for a in preset.assumptions if "flux" not in a)
        for flag in ("anharmonic", "exact"):
            if flag in entries:
                changes[flag] = _bool(flag, entries[flag])
        spec = replace(preset, **changes)
    except DomainError as exc:
        raise ConfigError(str(exc)) from None
    return RunConfig(
        spec=spec,
        per_second=_bool("per_second", entries.get("per_second", "false")),
        angular=_bool("angular", entries.get("angular", "false")),
    )
