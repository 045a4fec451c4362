import numpy as np
import pytest

from specmean.instances import random_pd_from
from specmean.rng import SplitMix64


def rel_err(X, Y):
    X, Y = np.asarray(X, float), np.asarray(Y, float)
    return np.max(np.abs(X - Y)) / (1.0 + np.max(np.abs(Y)))


@pytest.fixture
def pd_pairs():
    """Seeded PD pairs of dims 1-8 with spectra in random intervals."""

    def make(count, seed=2024, dims=(1, 2, 3, 4, 5, 6, 7, 8)):
        rng = SplitMix64(seed)
        out = []
        for i in range(count):
            n = dims[i % len(dims)]
            m = rng.log_uniform(0.2, 2.0)
            M = m * rng.log_uniform(1.5, 30.0)
            out.append((random_pd_from(rng, n, m, M, pinned=n > 1), random_pd_from(rng, n, m, M, pinned=n > 1)))
        return out

    return make


def pytest_terminal_summary(terminalreporter):
    import sys

    mod = sys.modules.get("test_acceptance")
    verdicts = getattr(mod, "VERDICTS", None)
    if verdicts:
        terminalreporter.section("acceptance criteria")
        for n in sorted(verdicts):
            terminalreporter.write_line(verdicts[n])
