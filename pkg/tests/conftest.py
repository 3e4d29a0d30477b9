import random

import pytest

from ldm.fields import make_cyclotomic_field, make_prime_field


@pytest.fixture
def F7():
    return make_prime_field(7)


@pytest.fixture
def F19():
    return make_prime_field(19)


@pytest.fixture
def Q9():
    return make_cyclotomic_field(9)


@pytest.fixture
def rng():
    return random.Random(20241)


def pytest_terminal_summary(terminalreporter):
    import sys

    mod = sys.modules.get("test_acceptance")
    if mod is None or not mod.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(mod.RESULTS):
        terminalreporter.write_line(mod.RESULTS[number])
