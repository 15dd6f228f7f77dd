from fractions import Fraction

import pytest
from hypothesis import settings, strategies as st

settings.register_profile("default", deadline=None, max_examples=100)
settings.load_profile("default")

from nilcx.fields import Gaussian, RationalFunction  # noqa: E402

small_int = st.integers(-6, 6)
rationals = st.builds(Fraction, st.integers(-20, 20), st.integers(1, 9))
polys = st.lists(rationals, min_size=0, max_size=4)
nonzero_polys = polys.filter(lambda p: any(p))
rational_functions = st.builds(RationalFunction, polys, nonzero_polys)
scalars_q_t = st.one_of(rationals, rational_functions)
gaussians = st.builds(Gaussian, scalars_q_t, scalars_q_t)
any_scalar = st.one_of(rationals, rational_functions, gaussians)


@pytest.fixture(scope="session")
def catalog():
    from nilcx.catalog import all_entries

    return {e.name: e for e in all_entries()}


@pytest.fixture(scope="session")
def valid_entries(catalog):
    from nilcx.lie import check_jacobi

    return [e for e in catalog.values() if check_jacobi(e.algebra).valid]


@pytest.fixture(scope="session")
def verify_report():
    from nilcx.catalog import verify_all

    return verify_all()


def pytest_terminal_summary(terminalreporter):
    import sys

    mod = sys.modules.get("test_acceptance")
    if mod is None or not mod.LINES:
        return
    terminalreporter.section("acceptance criteria")
    for k in sorted(mod.LINES):
        terminalreporter.write_line(mod.LINES[k])
