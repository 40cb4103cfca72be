import numpy as np
import pytest

from warpcurv.cone import alpha_for_cone_angle, alpha_max

# criterion number -> (passed, detail); filled by test_acceptance
ACCEPTANCE = {}

ALPHA_2 = 343 / 4096  # n = 3, degree 2


def alpha_grid(n):
    """Representative alpha values: negative, zero and inside (0, alpha_max)."""
    amax = alpha_max(n)
    return [-0.5, -0.01, 0.0, 0.05 * amax, 0.9 * amax]


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


@pytest.fixture(scope="session")
def alpha_2():
    return alpha_for_cone_angle(3, d=2)


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for k in sorted(ACCEPTANCE):
        ok, detail = ACCEPTANCE[k]
        terminalreporter.write_line(f"criterion {k:2d}: {'PASS' if ok else 'FAIL'}  {detail}")
