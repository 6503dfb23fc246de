"""Exit criteria for the package, one test per criterion.

Each test records a one-line verdict; the lines are printed in the terminal
summary (see ``conftest.py``) and when the file is run as a script.
"""

import math
import time

import numpy as np
import pytest
from hypothesis import HealthCheck, given, settings
from hypothesis import strategies as st
from scipy.integrate import quad

from conftest import transmon_params
from majorana_transmon.cli import main
from majorana_transmon.exact import (
    ChargeLatticeHamiltonian,
    build_majorana_transmon,
    build_transmon,
    exact_even_odd_splitting,
    hermitian_eigensolve,
    ho_operator_matrix,
    majorana_transmon_levels,
)
from majorana_transmon.qubit_model import (
    QubitParams,
    cos_half_matrix_element,
    even_odd_splitting,
    excitation_spectrum,
    hybrid_level_solution,
    junction_geometry,
    majorana_splitting,
    sin_half_matrix_element,
)
from majorana_transmon.rates import (
    parity_switch_rate_ground,
    parity_switch_rate_matrix_form,
    sqp,
)
from majorana_transmon.specfun import bessel_k0
from majorana_transmon.sweep import preset_fig3, run_sweep
from majorana_transmon.tables import max_relative_difference, parse_csv, read_csv

pytestmark = pytest.mark.acceptance

RESULTS = {}
GOLDEN = __import__("pathlib").Path(__file__).parent / "golden"


def record(number, ok, detail):
    RESULTS[number] = f"criterion {number}: {'PASS' if ok else 'FAIL'} ({detail})"
    assert ok, RESULTS[number]


def test_criterion_01_charge_dispersion_vs_exact():
    start = time.perf_counter()
    errors = {}
    for ratio in (20, 35, 50, 80):
        exact = exact_even_odd_splitting(0.2, 0.2 * ratio, 0.0)
        errors[ratio] = abs(even_odd_splitting(0.2, 0.2 * ratio, 0.0) - exact) / exact
    elapsed = time.perf_counter() - start
    seq = [errors[r] for r in (20, 35, 50, 80)]
    ok = (errors[20] <= 0.10 and errors[50] <= 0.05
          and all(b < a for a, b in zip(seq, seq[1:])) and elapsed < 5.0)
    record(1, ok, "errors " + ", ".join(f"{r}: {e:.4f}" for r, e in errors.items()) + f"; {elapsed:.2f} s")


def test_criterion_02_half_angle_elements_vs_oscillator():
    start = time.perf_counter()
    EC, ratio = 1.0, 50.0
    omega_p = math.sqrt(8 * EC * ratio * EC)
    lam2 = EC / omega_p
    bound = 5 * lam2 ** 1.5
    worst = 0.0
    for phi in np.linspace(-math.pi, 2 * math.pi, 13):
        cos_m = ho_operator_matrix("cos_half", phi, 1j * math.sqrt(lam2), 128).matrix
        sin_m = ho_operator_matrix("sin_half", phi, 1j * math.sqrt(lam2), 128).matrix
        for m in (0, 1):
            for n in (0, 1):
                worst = max(worst,
                            abs(cos_m[m, n] - cos_half_matrix_element(m, n, phi, EC, omega_p)),
                            abs(sin_m[m, n] - sin_half_matrix_element(m, n, phi, EC, omega_p)))
    elapsed = time.perf_counter() - start
    record(2, worst <= bound and elapsed < 5.0,
           f"max deviation {worst:.3e} vs bound {bound:.3e}; {elapsed:.2f} s")


def test_criterion_03_parity_crossing_splitting():
    p = QubitParams.from_asymmetry(1.0, 8.0, 0.25, EM0=0.05, EM1=0.05, ng=0.25, flux=0.0)
    levels = majorana_transmon_levels(p, 2)
    exact = float(levels[1] - levels[0])
    analytic = majorana_splitting(p.EM0, p.EM1, p.flux, junction_geometry(p).theta)
    rel = abs(exact - analytic) / analytic
    record(3, rel <= 0.05, f"exact {exact:.6f} GHz vs omega_M {analytic:.6f} GHz, relative {rel:.4f}")


def test_criterion_04_four_pi_signature():
    base = QubitParams(EC=1.0, EJ0=4.0, EJ1=4.0)
    with_m = base.replace(EM0=0.5, EM1=0.5)
    a = np.array(excitation_spectrum(with_m).as_tuple())
    b = np.array(excitation_spectrum(with_m.replace(flux=1.0)).as_tuple())
    shift = float(np.max(np.abs(a - b)))
    worst = 0.0
    for f in np.linspace(0.0, 0.45, 10):
        for ng in (0.0, 0.1, 0.3):
            s = np.array(excitation_spectrum(base.replace(flux=f, ng=ng)).as_tuple())
            s1 = np.array(excitation_spectrum(base.replace(flux=f + 1.0, ng=ng)).as_tuple())
            mirror = np.array(excitation_spectrum(base.replace(flux=1.0 - f, ng=ng)).as_tuple())
            worst = max(worst, float(np.max(np.abs(s - s1))), float(np.max(np.abs(s - mirror))))
    g1 = junction_geometry(with_m.replace(flux=1.0))
    wm1 = majorana_splitting(0.5, 0.5, 1.0, g1.theta)
    ok = shift > 1e-6 and worst <= 1e-9 and wm1 == 0.0
    record(4, ok, f"E_M=0.5 shift f=0 vs f=1: {shift:.4f} GHz; E_M=0 period/mirror deviation {worst:.1e}; "
                  f"omega_M(f=1) = {wm1}")


def test_criterion_05_regular_transmon_limit():
    rng = np.random.default_rng(20240501)
    worst = 0.0
    for _ in range(100):
        EC = rng.uniform(0.1, 1.0)
        p = QubitParams.from_asymmetry(
            EC, rng.uniform(15.0, 100.0) * EC, rng.uniform(0.0, 0.9),
            ng=rng.uniform(-1.0, 1.0), flux=rng.uniform(0.0, 0.4),
            temperature=rng.uniform(0.5, 5.0), delta=rng.uniform(20.0, 60.0))
        r = parity_switch_rate_ground(p)
        ej = junction_geometry(p).EJ_eff
        # S_qp at the doublet splitting omega'_eo = |omega_eo| (no Majorana mixing)
        ref = r.prefactor * sqp(abs(r.omega_eo), p.temperature, p.delta, ej, 0.5 * abs(r.omega_eo))
        worst = max(worst, abs(r.gamma - ref) / ref)
    record(5, worst <= 1e-12, f"max relative deviation {worst:.1e} over 100 draws")


def test_criterion_06_closed_vs_matrix_form():
    worst = 0.0
    ok = True
    for ratio in (20, 50, 100):
        for f in (0.1, 0.25, 0.4):
            for d in (0.0, 0.25):
                for em, ng in ((0.0, 0.0), (0.05, 0.1), (0.1, 0.25)):
                    p = QubitParams.from_asymmetry(0.2, 0.2 * ratio, d, flux=f, EM0=em, EM1=em, ng=ng)
                    closed = parity_switch_rate_ground(p).gamma
                    matrix = parity_switch_rate_matrix_form(p)
                    limit = math.sqrt(p.EC / (8 * junction_geometry(p).EJ_eff))
                    rel = abs(closed - matrix) / closed
                    worst = max(worst, rel / limit)
                    ok &= rel <= limit
    record(6, ok, f"largest deviation is {worst:.3f} of (E_C/8E_J)^(1/2)")


def test_criterion_07_rate_grows_with_ratio():
    start = time.perf_counter()
    result = run_sweep(preset_fig3())
    elapsed = time.perf_counter() - start
    ok = elapsed < 10.0 and result.metadata["error_rows"] == 0
    details = []
    for em in result.overlay_values:
        rows = [r for r in result.rows if r["overlay_E_M"] == em and r["ej_over_ec"] >= 20.0]
        gamma = np.array([r["gamma"] for r in rows])
        mono = bool(np.all(np.diff(gamma) > 0))
        ok &= mono
        details.append(f"E_M={em}: {'increasing' if mono else 'NOT monotone'}")
    record(7, ok, "; ".join(details) + f"; sweep {elapsed:.2f} s")


def k0_integral(x):
    t_max = math.acosh(max(740.0 / x, 1.0)) + 1.0
    return quad(lambda t: math.exp(-x * math.cosh(t)), 0.0, t_max, epsabs=0.0, epsrel=1e-13, limit=200)[0]


def test_criterion_08_spectral_density():
    T, Delta = 2.083661912, 38.9296267962
    balance = 0.0
    for w in np.linspace(0.01, 20.0, 60):
        ratio = sqp(w, T, Delta, 5.0, 1e-4) / sqp(-w, T, Delta, 5.0, 1e-4)
        balance = max(balance, abs(ratio / math.exp(w / T) - 1.0))
    k0 = max(abs(bessel_k0(x) - k0_integral(x)) / k0_integral(x) for x in (0.1, 1.0, 5.0, 20.0))
    record(8, balance <= 1e-10 and k0 <= 1e-9,
           f"detailed balance {balance:.1e}; K0 vs quadrature {k0:.1e}")


DRAWS = 1000
_fast = settings(max_examples=DRAWS, deadline=None, database=None,
                 suppress_health_check=list(HealthCheck))


def test_criterion_09_invariant_suite():
    counts = {}
    start = time.perf_counter()

    @_fast
    @given(st.floats(-1e3, 1e3), st.floats(-1e3, 1e3))
    def mixing(w, m):
        if max(abs(w), abs(m)) < 1e-300:
            m = 1.0
        counts["mixing"] = counts.get("mixing", 0) + 1
        s = hybrid_level_solution(0, w, m)
        assert abs(s.a_plus ** 2 + s.b_plus ** 2 - 1) <= 1e-12
        assert abs(s.a_minus ** 2 + s.b_minus ** 2 - 1) <= 1e-12
        assert abs(s.a_plus * s.a_minus + s.b_plus * s.b_minus) <= 1e-12
        assert abs(s.weight_zero + s.weight_splitting - 1) <= 1e-12

    @_fast
    @given(transmon_params(min_ratio=5.0, max_ratio=60.0))
    def half_lattice(p):
        counts["half_lattice"] = counts.get("half_lattice", 0) + 1
        h = build_majorana_transmon(p)
        dense = h.to_dense()
        assert np.array_equal(dense, dense.conj().T)
        r = hermitian_eigensolve(h, n_eigs=6)
        assert r.convergence_delta <= 1e-8 * max(1.0, float(np.max(np.abs(r.eigenvalues))))
        flipped = ChargeLatticeHamiltonian(h.cutoff, h.spacing, h.diagonal, -h.band1, h.band2,
                                           EC=h.EC, EJ=h.EJ, ng=h.ng, coupling=-h.coupling)
        gauge = hermitian_eigensolve(flipped, n_eigs=6).eigenvalues
        assert np.max(np.abs(gauge - r.eigenvalues)) <= 1e-9
        shifted = majorana_transmon_levels(p.replace(ng=p.ng + 0.5), 6)
        assert np.max(np.abs(shifted - r.eigenvalues)) <= 1e-9

    @_fast
    @given(st.floats(0.1, 1.0), st.floats(1.0, 60.0), st.floats(-1.0, 1.0))
    def cooper_lattice(EC, ratio, ng):
        counts["cooper_lattice"] = counts.get("cooper_lattice", 0) + 1
        a = hermitian_eigensolve(build_transmon(EC, ratio * EC, ng), n_eigs=6)
        b = hermitian_eigensolve(build_transmon(EC, ratio * EC, ng + 1.0), n_eigs=6, check_convergence=False)
        c = hermitian_eigensolve(build_transmon(EC, ratio * EC, -ng), n_eigs=6, check_convergence=False)
        assert np.max(np.abs(a.eigenvalues - b.eigenvalues)) <= 1e-9
        assert np.max(np.abs(a.eigenvalues - c.eigenvalues)) <= 1e-9

    @_fast
    @given(transmon_params(), st.integers(-3, 3))
    def analytic_periodicity(p, k):
        counts["analytic_periodicity"] = counts.get("analytic_periodicity", 0) + 1
        s = np.array(excitation_spectrum(p).as_tuple())
        t = np.array(excitation_spectrum(p.replace(ng=p.ng + k)).as_tuple())
        assert np.max(np.abs(s - t)) <= 1e-9 * np.max(np.abs(s))

    failures = []
    for prop in (mixing, half_lattice, cooper_lattice, analytic_periodicity):
        try:
            prop()
        except AssertionError as exc:  # pragma: no cover - reported through record
            failures.append(f"{prop.__name__}: {exc}")
    elapsed = time.perf_counter() - start
    enough = all(counts.get(k, 0) >= DRAWS for k in ("mixing", "half_lattice", "cooper_lattice", "analytic_periodicity"))
    ok = not failures and enough and elapsed < 60.0
    record(9, ok, f"draws {counts}; {elapsed:.1f} s" + (f"; failures {failures}" if failures else ""))


def test_criterion_10_end_to_end(tmp_path, capsys):
    expected = {
        "fig2a": (["spectrum", "--preset", "fig2a"],
                  ["overlay_E_M", "n_g", "branch_pp", "branch_pm", "branch_mp", "branch_mm"], 603),
        "fig2b": (["spectrum", "--preset", "fig2b"],
                  ["overlay_E_M", "f", "branch_pp", "branch_pm", "branch_mp", "branch_mm"], 603),
        "fig3": (["rates", "--preset", "fig3"],
                 ["overlay_E_M", "ej_over_ec", "gamma", "prefactor", "weight_0", "weight_w",
                  "s_at_0", "s_at_w", "floored"], 184),
    }
    ok = True
    notes = []
    for name, (argv, columns, nrows) in expected.items():
        path = tmp_path / f"{name}.csv"
        code = main(argv + ["--out", str(path)])
        result = read_csv(path)
        schema = result.columns == columns and len(result.rows) == nrows
        diff = max_relative_difference(result, read_csv(GOLDEN / f"{name}.csv"))
        ok &= code == 0 and schema and diff <= 1e-9
        notes.append(f"{name} exit {code} schema {'ok' if schema else 'BAD'} golden {diff:.1e}")
    capsys.readouterr()
    code = main(["validate"])
    report = capsys.readouterr().out
    ok &= code == 0 and ": fail" not in report
    notes.append(f"validate exit {code}")
    record(10, ok, "; ".join(notes))


if __name__ == "__main__":  # pragma: no cover
    import sys

    sys.exit(pytest.main([__file__, "-q", "-p", "no:cacheprovider"]))
