import sys

import numpy as np
import pytest

from iaswarm.mimo import ScenarioSpec, generate_channels, random_beamformers


def random_spec(rng, max_users=4, max_dim=5):
    K = int(rng.integers(2, max_users + 1))
    M = rng.integers(1, max_dim + 1, size=K)
    N = rng.integers(1, max_dim + 1, size=K)
    d = [int(rng.integers(1, min(m, n) + 1)) for m, n in zip(M, N)]
    return ScenarioSpec(K, M, N, d)


def random_instance(seed, unit=False):
    """Random heterogeneous scenario with channels and beamformers."""
    rng = np.random.default_rng(seed)
    spec = random_spec(rng)
    H = generate_channels(spec, seed)
    B = random_beamformers(spec, rng, unit=unit)
    return spec, H, B


@pytest.fixture
def k3():
    from iaswarm.mimo import make_scenario
    return make_scenario(3, 5, 5, 2)


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    if mod is None or not mod.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(mod.RESULTS):
        terminalreporter.write_line(mod.RESULTS[n])
