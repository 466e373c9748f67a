import sys
from pathlib import Path

import numpy as np
import pytest

sys.path.insert(0, str(Path(__file__).parent))

from ugclass import UncertainGraph  # noqa: E402


def random_graph(rng, n, density=0.4, labels=3, unlabeled=0.0):
    iu, ju = np.triu_indices(n, k=1)
    keep = rng.random(len(iu)) < density
    probs = rng.uniform(0.01, 1.0, size=int(keep.sum()))
    g = UncertainGraph.from_arrays(n, iu[keep], ju[keep], probs)
    lab = rng.integers(1, labels + 1, size=n)
    lab[rng.random(n) < unlabeled] = 0
    return g, lab


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES, key=lambda s: int(s.split()[0][2:])):
            terminalreporter.write_line(line)
