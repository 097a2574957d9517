import numpy as np
import pytest
from hypothesis import settings

from cylinder_landau.core import new_config

settings.register_profile("default", max_examples=40, deadline=None)
settings.load_profile("default")

# (rho, q) pairs exercised by the parametrized tests
CLASSES = [(0.0, 0.0), (0.3, 0.25), (-0.7, 0.6)]


@pytest.fixture
def rng():
    return np.random.default_rng(1234)


@pytest.fixture
def unit_config():
    return new_config()


@pytest.fixture(params=CLASSES, ids=lambda p: f"rho={p[0]},q={p[1]}")
def config(request):
    rho, q = request.param
    return new_config(q=q, rho=rho)


@pytest.fixture
def acceptance_log(request):
    log = request.config.stash.setdefault(_LOG_KEY, [])

    def record(criterion: str, ok: bool, detail: str) -> None:
        log.append((criterion, bool(ok), detail))

    return record


_LOG_KEY = pytest.StashKey[list]()


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    log = config.stash.get(_LOG_KEY, [])
    if not log:
        return
    terminalreporter.section("acceptance criteria")
    for criterion, ok, detail in log:
        terminalreporter.write_line(f"{'PASS' if ok else 'FAIL'} {criterion}: {detail}")
