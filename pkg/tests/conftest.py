import pytest
from hypothesis import settings

settings.register_profile("default", deadline=None, max_examples=100)
settings.load_profile("default")

PRIMES = (2, 3, 5, 7)


def egcd_inverse(u, m):
    """Modular inverse by the textbook extended Euclidean algorithm."""
    r0, r1, s0, s1 = m, u % m, 0, 1
    while r1:
        k = r0 // r1
        r0, r1 = r1, r0 - k * r1
        s0, s1 = s1, s0 - k * s1
    assert r0 == 1
    return s0 % m


@pytest.fixture
def primes():
    return PRIMES


def pytest_terminal_summary(terminalreporter):
    import sys
    mod = sys.modules.get("test_acceptance")
    lines = getattr(mod, "LINES", None)
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in lines:
            terminalreporter.write_line(line)
