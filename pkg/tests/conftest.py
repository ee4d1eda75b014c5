import random

import pytest
from hypothesis import settings

from hyperhodge.jacobian import build_context, fermat, random_smooth_context

settings.register_profile("default", max_examples=60, deadline=None)
settings.load_profile("default")

from _util import ACCEPTANCE


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for k in sorted(ACCEPTANCE):
        ok, detail = ACCEPTANCE[k]
        terminalreporter.write_line(f"criterion {k}: {'PASS' if ok else 'FAIL'}  {detail}")


@pytest.fixture(scope="session")
def cubic_curve():
    return build_context(1, fermat(1, 3))


@pytest.fixture(scope="session")
def quartic_surface():
    return build_context(2, fermat(2, 4))


@pytest.fixture(scope="session")
def random_cubic_surface():
    return random_smooth_context(2, 3, random.Random(7))
