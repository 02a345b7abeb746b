import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from ladderdist.sweep import sweep_universe  # noqa: E402
from ladderdist.universe import UniverseBuilder  # noqa: E402

ACCEPTANCE_LINES: dict[int, str] = {}


@pytest.fixture(scope="session")
def cx_universe():
    """Degree-1 distinguished character plus an eta-distinguished cuspidal of degree 2."""
    b = UniverseBuilder()
    b.declare_tower("triv", 1, gamma=0)
    b.declare_tower("rho2", 2, gamma=1)
    b.declare_tower("sigma", 3, tau="sigma_t", dual="sigma_d", chi="sigma_x")
    b.declare_tower("sigma_t", 3, tau="sigma", dual="sigma_td", chi="sigma_tx")
    b.declare_tower("sigma_d", 3, tau="sigma_td", dual="sigma", chi="sigma_dx")
    b.declare_tower("sigma_td", 3, tau="sigma_d", dual="sigma_t", chi="sigma_tdx")
    b.declare_tower("sigma_x", 3, tau="sigma_tx", dual="sigma_dx", chi="sigma")
    b.declare_tower("sigma_tx", 3, tau="sigma_x", dual="sigma_tdx", chi="sigma_t")
    b.declare_tower("sigma_dx", 3, tau="sigma_tdx", dual="sigma_x", chi="sigma_d")
    b.declare_tower("sigma_tdx", 3, tau="sigma_dx", dual="sigma_tx", chi="sigma_td")
    return b.build()


@pytest.fixture(scope="session")
def u0():
    return sweep_universe(0)


@pytest.fixture(scope="session")
def u1():
    return sweep_universe(1)


@pytest.fixture(scope="session", params=[0, 1], ids=["gamma0", "gamma1"])
def su(request):
    return sweep_universe(request.param)


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for k in sorted(ACCEPTANCE_LINES):
            terminalreporter.write_line(ACCEPTANCE_LINES[k])
