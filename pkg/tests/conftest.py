import pytest

from paleytype.graphs import build_paley_type
from paleytype.numtheory import PrimeSet

# every valid modulus the suite exercises, smallest first
TEST_PRIMESETS = [(5,), (13,), (17,), (5, 13), (5, 17), (13, 17), (5, 29), (5, 13, 17)]


@pytest.fixture(scope="session")
def gamma():
    cache = {}

    def get(*primes):
        if primes not in cache:
            cache[primes] = build_paley_type(PrimeSet(primes))
        return cache[primes]

    return get


def pytest_terminal_summary(terminalreporter):
    from test_acceptance import RESULTS

    if RESULTS:
        terminalreporter.section("acceptance criteria")
        for number in sorted(RESULTS):
            terminalreporter.write_line(RESULTS[number])
