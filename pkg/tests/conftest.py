from hypothesis import strategies as st

from majorana_transmon.qubit_model import QubitParams


@st.composite
def transmon_params(draw, min_ratio=10.0, max_ratio=100.0, em=None, max_flux=0.45):
    """Random device in the transmon regime, E_J(f)/E_C >= min_ratio."""
    EC = draw(st.floats(0.1, 1.0))
    d = draw(st.floats(0.0, 0.9))
    f = draw(st.floats(0.0, max_flux))
    # E_J(f)/E_J_sum is at least cos(pi f_max)
    import math
    shrink = math.sqrt(math.cos(math.pi * f) ** 2 + d * d * math.sin(math.pi * f) ** 2)
    ratio = draw(st.floats(min_ratio, max_ratio))
    EM0 = draw(st.floats(0.0, 0.5)) if em is None else em
    EM1 = draw(st.floats(0.0, 0.5)) if em is None else em
    return QubitParams.from_asymmetry(
        EC, ratio * EC / shrink, d,
        EM0=EM0, EM1=EM1,
        ng=draw(st.floats(-1.0, 1.0)),
        flux=f,
        temperature=draw(st.floats(0.5, 5.0)),
        delta=draw(st.floats(20.0, 60.0)),
    )


def pytest_terminal_summary(terminalreporter):
    try:
        from test_acceptance import RESULTS
    except ImportError:
        return
    if RESULTS:
        terminalreporter.section("acceptance criteria")
        for number in sorted(RESULTS):
            terminalreporter.write_line(RESULTS[number])
