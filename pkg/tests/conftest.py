import pytest

from bierror import _kernels
from bierror.distributions import fisher_f, normal
from bierror.simulation import SimConfig, run_simulation

# filled in by test_acceptance; echoed at the end of the run
ACCEPTANCE_LINES: dict[int, str] = {}


@pytest.fixture(scope="session")
def warm_jit():
    """Compile the numba kernels once so timing assertions measure steady state."""
    normal(0, 1).cdf(0.5)
    fisher_f(10, 10, 10).quantile(0.5)
    _kernels.error_rates_array(fisher_f(2, 3).packed, fisher_f(2, 3, 1).packed, True,
                               fisher_f(2, 3).quantile([0.5]))
    run_simulation(SimConfig(M=2, ns=(3,), mus=(0.0,), deltas=(1.0,)))
    return True


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_LINES:
        return
    terminalreporter.section("acceptance criteria")
    for k in sorted(ACCEPTANCE_LINES):
        terminalreporter.write_line(ACCEPTANCE_LINES[k])
