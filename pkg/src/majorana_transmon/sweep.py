"""Deterministic one-dimensional parameter sweeps and figure presets."""

import math
import warnings
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field

import numpy as np

from . import __version__
from .errors import ConvergenceError, DomainError, TransmonLimitWarning
from .exact import exact_even_odd_splitting, exact_spectrum_branches, majorana_transmon_levels
from .qubit_model import QubitParams, excitation_spectrum, junction_geometry, level_solutions
from .rates import default_omega_floor, parity_switch_rate_excited, parity_switch_rate_ground
from .units import energy_from_microelectronvolt, temperature_from_millikelvin

AXES = {"n_g": "ng", "f": "flux", "ej_over_ec": None, "E_M": None, "T": "temperature"}
QUANTITIES = ("spectrum", "rate_ground", "rate_excited", "splittings")
OVERLAY_KEYS = {"EC", "EJ0", "EJ1", "EM0", "EM1", "EM", "ng", "flux", "delta", "temperature"}

_COLUMNS = {
    "spectrum": ["branch_pp", "branch_pm", "branch_mp", "branch_mm"],
    "rate_ground": ["gamma", "prefactor", "weight_0", "weight_w", "s_at_0", "s_at_w", "floored"],
    "splittings": [
        "omega_eo", "omega_M", "omega_eo_prime", "omega_eo_1", "omega_M_1", "omega_eo_prime_1",
    ],
}
_COLUMNS["rate_excited"] = _COLUMNS["rate_ground"]
_EXACT_SPLITTING_COLUMNS = ["omega_eo_exact", "ground_splitting_exact"]


@dataclass(frozen=True)
class SweepSpec:
    """What to evaluate, along which axis, for which overlays.

    ``overlays`` is a sequence of parameter overrides applied to ``base``
    before the axis value; key ``EM`` sets both Majorana couplings. On the
    ``ej_over_ec`` axis the junction sum is ``value * EC`` with the base
    asymmetry kept.
    """

    base: QubitParams
    axis: str
    grid: tuple
    quantity: str
    overlays: tuple = ({},)
    anharmonic: bool = False
    omega_floor: float | None = None
    exact: bool = False
    name: str = "custom"
    assumptions: tuple = field(default=())

    def __post_init__(self):
        if self.axis not in AXES:
            raise DomainError(f"unknown axis {self.axis!r}; choose from {sorted(AXES)}")
        if self.quantity not in QUANTITIES:
            raise DomainError(f"unknown quantity {self.quantity!r}; choose from {QUANTITIES}")
        grid = tuple(float(x) for x in self.grid)
        if not grid:
            raise DomainError("sweep grid is empty")
        if any(b <= a for a, b in zip(grid, grid[1:])):
            raise DomainError("sweep grid must be strictly ascending")
        object.__setattr__(self, "grid", grid)
        overlays = tuple(dict(o) for o in self.overlays) or ({},)
        for o in overlays:
            unknown = set(o) - OVERLAY_KEYS
            if unknown:
                raise DomainError(f"unknown overlay keys {sorted(unknown)}")
            _apply_overlay(self.base, o)  # raises if it breaks parameter invariants
        object.__setattr__(self, "overlays", overlays)
        if self.omega_floor is not None and not self.omega_floor > 0:
            raise DomainError("omega_floor must be positive")

    @property
    def columns(self):
        cols = ["overlay_E_M", self.axis] + _COLUMNS[self.quantity]
        if self.exact and self.quantity == "splittings":
            cols += _EXACT_SPLITTING_COLUMNS
        return cols


@dataclass
class SweepResult:
    metadata: dict
    columns: list
    rows: list

    def column(self, name, overlay=None):
        """Values of one column, optionally restricted to one ``overlay_E_M``."""
        return [
            r[name] for r in self.rows if overlay is None or r["overlay_E_M"] == overlay
        ]

    @property
    def overlay_values(self):
        seen = []
        for r in self.rows:
            if r["overlay_E_M"] not in seen:
                seen.append(r["overlay_E_M"])
        return seen


def _apply_overlay(base, overlay):
    changes = dict(overlay)
    if "EM" in changes:
        em = changes.pop("EM")
        changes.setdefault("EM0", em)
        changes.setdefault("EM1", em)
    return base.replace(**changes)


def point_params(spec: SweepSpec, overlay: dict, value: float) -> QubitParams:
    p = _apply_overlay(spec.base, overlay)
    if spec.axis == "ej_over_ec":
        return QubitParams.from_asymmetry(
            p.EC, value * p.EC, p.asymmetry,
            EM0=p.EM0, EM1=p.EM1, ng=p.ng, flux=p.flux, delta=p.delta, temperature=p.temperature,
        )
    if spec.axis == "E_M":
        return p.replace(EM0=value, EM1=value)
    return p.replace(**{AXES[spec.axis]: value})


def _evaluate(p, spec):
    q = spec.quantity
    if q == "spectrum":
        if spec.exact:
            values = [float(x) for x in exact_spectrum_branches(p)]
        else:
            values = list(excitation_spectrum(p, anharmonic=spec.anharmonic).as_tuple())
        return dict(zip(_COLUMNS[q], values))
    if q in ("rate_ground", "rate_excited"):
        fn = parity_switch_rate_ground if q == "rate_ground" else parity_switch_rate_excited
        r = fn(p, spec.omega_floor)
        return {c: getattr(r, c) for c in _COLUMNS[q]}
    _, g, e = level_solutions(p)
    row = {
        "omega_eo": g.omega_eo, "omega_M": g.omega_M, "omega_eo_prime": g.omega_eo_prime,
        "omega_eo_1": e.omega_eo, "omega_M_1": e.omega_M, "omega_eo_prime_1": e.omega_eo_prime,
    }
    if spec.exact:
        geo = junction_geometry(p)
        levels = majorana_transmon_levels(p, 2)
        row["omega_eo_exact"] = exact_even_odd_splitting(p.EC, geo.EJ_eff, p.ng)
        row["ground_splitting_exact"] = float(levels[1] - levels[0])
    return row


def _run_point(task):
    spec, overlay_index, value = task
    overlay = spec.overlays[overlay_index]
    p = point_params(spec, overlay, value)
    row = {"overlay_E_M": p.EM, spec.axis: value}
    try:
        with warnings.catch_warnings():
            warnings.simplefilter("ignore", TransmonLimitWarning)
            row.update(_evaluate(p, spec))
        row["error"] = ""
    except (DomainError, ConvergenceError, ArithmeticError) as exc:
        for c in spec.columns[2:]:
            row[c] = False if c == "floored" else math.nan
        row["error"] = f"{type(exc).__name__}: {exc}"
    rough = junction_geometry(p).EJ_eff < 10.0 * p.EC
    return row, rough


def _describe(spec):
    base = asdict(spec.base)
    floor = spec.omega_floor
    meta = {
        "tool": "majorana_transmon",
        "version": __version__,
        "name": spec.name,
        "quantity": spec.quantity,
        "axis": spec.axis,
        "grid": f"{spec.grid[0]!r}..{spec.grid[-1]!r} ({len(spec.grid)} points)",
        "units": "energies, frequencies and rates in GHz (E/h)",
    }
    meta.update({f"param.{k}": v for k, v in base.items()})
    meta["param.asymmetry_d"] = spec.base.asymmetry
    meta["overlays"] = "; ".join(
        ",".join(f"{k}={v!r}" for k, v in sorted(o.items())) or "base" for o in spec.overlays
    )
    meta["anharmonic"] = spec.anharmonic
    meta["exact"] = spec.exact
    if spec.quantity.startswith("rate"):
        meta["omega_floor"] = (
            floor if floor is not None else f"{default_omega_floor(spec.base.temperature)!r} (1e-4 T)"
        )
    for i, note in enumerate(spec.assumptions):
        meta[f"assumption.{i}"] = note
    return meta


def run_sweep(spec: SweepSpec, workers: int = 1) -> SweepResult:
    """Evaluate ``spec`` at every (overlay, grid point), overlay-major.

    A failing point is recorded in the ``error`` field of its row and
    leaves the other rows untouched. ``workers > 1`` evaluates points in
    separate processes; output order and values do not depend on it.
    """
    tasks = [(spec, i, v) for i in range(len(spec.overlays)) for v in spec.grid]
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            out = list(pool.map(_run_point, tasks, chunksize=max(1, len(tasks) // (4 * workers))))
    else:
        out = [_run_point(t) for t in tasks]
    rows = [r for r, _ in out]
    meta = _describe(spec)
    meta["rows"] = len(rows)
    meta["error_rows"] = sum(1 for r in rows if r["error"])
    meta["rough_transmon_points"] = sum(1 for _, rough in out if rough)
    if spec.quantity.startswith("rate"):
        meta["floored_rows"] = sum(1 for r in rows if r.get("floored") is True)
    columns = list(spec.columns)
    if meta["error_rows"]:
        columns.append("error")
    return SweepResult(meta, columns, rows)


def _linspace(a, b, n):
    return tuple(float(x) for x in np.linspace(a, b, n))


def _em_overlays(values):
    return tuple({"EM0": v, "EM1": v} for v in values)


FIG2_BASE = dict(EC=1.0, EJ_sum=8.0, d=0.25)


def preset_fig2a() -> SweepSpec:
    """Spectrum versus gate charge for E_M = 0, 50, 100 MHz."""
    base = QubitParams.from_asymmetry(FIG2_BASE["EC"], FIG2_BASE["EJ_sum"], FIG2_BASE["d"])
    return SweepSpec(
        base=base,
        axis="n_g",
        grid=_linspace(0.0, 1.0, 201),
        quantity="spectrum",
        overlays=_em_overlays((0.0, 0.05, 0.1)),
        name="fig2a",
        assumptions=("flux f = 0 is assumed for the gate-charge sweep",),
    )


def preset_fig2b() -> SweepSpec:
    """Spectrum versus reduced flux for E_M = 0, 0.5, 1 GHz."""
    base = QubitParams.from_asymmetry(FIG2_BASE["EC"], FIG2_BASE["EJ_sum"], FIG2_BASE["d"])
    return SweepSpec(
        base=base,
        axis="f",
        grid=_linspace(0.0, 1.0, 201),
        quantity="spectrum",
        overlays=_em_overlays((0.0, 0.5, 1.0)),
        name="fig2b",
    )


def preset_fig3() -> SweepSpec:
    """Ground-state parity-switching rate versus E_J/E_C of a symmetric SQUID."""
    base = QubitParams.from_asymmetry(
        0.2, 50 * 0.2, 0.0,
        ng=0.0,
        flux=0.25,
        delta=energy_from_microelectronvolt(161.0),
        temperature=temperature_from_millikelvin(100.0),
    )
    return SweepSpec(
        base=base,
        axis="ej_over_ec",
        grid=_linspace(10.0, 100.0, 46),
        quantity="rate_ground",
        overlays=_em_overlays((0.0, 0.05, 0.1, 0.5)),
        name="fig3",
        assumptions=(
            "E_J/E_C is (EJ0 + EJ1)/EC with symmetric junctions",
            "E_M overlay values 0, 0.05, 0.1, 0.5 GHz are this tool's choice",
        ),
    )


PRESETS = {"fig2a": preset_fig2a, "fig2b": preset_fig2b, "fig3": preset_fig3}
