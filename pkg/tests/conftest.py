import numpy as np
import pytest

from rscompact import rs_classical as rc


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


@pytest.fixture(params=[2, 3, 4, 5])
def params_n(request):
    """Coupling constants for n = 2..5 with a non-integer g."""
    return rc.derive_params(request.param, 3, 0.7)


ACCEPTANCE = []


@pytest.fixture
def acceptance():
    """Record one PASS/FAIL line for an acceptance criterion."""
    def record(number, title, passed, detail):
        line = 'criterion {:>2} {:<28} {}  {}'.format(number, title, 'PASS' if passed else 'FAIL', detail)
        ACCEPTANCE.append((number, line))
        print(line)
        return passed
    return record


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE:
        terminalreporter.section('acceptance criteria')
        for _, line in sorted(ACCEPTANCE):
            terminalreporter.write_line(line)
