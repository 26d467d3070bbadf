import math

import numpy as np
import pytest

from holozeno.dfs import AngularParams

HALF_PI = 0.5 * math.pi

CNOT = np.array([[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 0, 1], [0, 0, 1, 0]], dtype=complex)
SWAP = np.eye(4, dtype=complex)[[0, 2, 1, 3]]
CZ = np.diag([1, 1, 1, -1]).astype(complex)

# filled by tests/test_acceptance.py, printed at the end of the session
ACCEPTANCE_LINES = []


def random_params(rng, n, omega=(0.1, 10.0)):
    out = []
    for _ in range(n):
        out.append(AngularParams(
            rng.uniform(*omega),
            rng.uniform(0.0, HALF_PI),
            rng.uniform(0.0, HALF_PI),
            *rng.uniform(0.0, 2 * math.pi, 3),
        ))
    return out


def random_su2(rng):
    z = rng.standard_normal((2, 2)) + 1j * rng.standard_normal((2, 2))
    q, r = np.linalg.qr(z)
    q = q * (np.diag(r) / np.abs(np.diag(r)))
    return q / np.sqrt(np.linalg.det(q))


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
