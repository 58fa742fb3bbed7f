import sys
from pathlib import Path

import pytest
from hypothesis import HealthCheck, settings

from fraceco.models import Params2, Params3

sys.path.insert(0, str(Path(__file__).parent))

settings.register_profile(
    "default",
    max_examples=60,
    deadline=None,
    derandomize=True,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("default")

ROOT = Path(__file__).resolve().parents[1]


@pytest.fixture
def damped() -> Params2:
    """Two-species set with a damped spiral into coexistence."""
    return Params2(rho=1.0, psi=19.0, phi=2.0, eps1=0.4, eps2=1.0)


@pytest.fixture
def unharvested() -> Params2:
    return Params2(rho=1.0, psi=15.0, phi=2.0)


@pytest.fixture
def mutualist() -> Params3:
    """Three-species set with eps2 < 1 (no dimensional preimage)."""
    return Params3(
        rho=0.61, psi=1.0, beta=7.0, eta=0.01, phi=1.4, phi1=0.02, eps1=0.12, eps2=0.43, eps3=0.06
    )


@pytest.fixture
def configs_dir() -> Path:
    return ROOT / "configs"


_CRITERIA_KEY = pytest.StashKey[list]()


def pytest_configure(config):
    config.stash[_CRITERIA_KEY] = []


@pytest.fixture
def criterion(request):
    """Record one acceptance line, print it, and assert it."""

    def record(label: str, ok: bool, detail: str) -> None:
        line = f"{'PASS' if ok else 'FAIL'}  {label}: {detail}"
        request.config.stash[_CRITERIA_KEY].append(line)
        print(line)
        assert ok, line

    return record


def pytest_terminal_summary(terminalreporter, config):
    lines = config.stash.get(_CRITERIA_KEY, [])
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in lines:
            terminalreporter.write_line(line)
