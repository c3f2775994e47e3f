from functools import lru_cache

import pytest
from hypothesis import settings

from orthoforms import vgs

settings.register_profile("ci", max_examples=40, deadline=None)
settings.load_profile("ci")

ACCEPTANCE_LINES = {}


@lru_cache(maxsize=None)
def rank_report(rank):
    return vgs.verify_rank(rank)


@lru_cache(maxsize=None)
def restrictions_report():
    return vgs.verify_restrictions()


@lru_cache(maxsize=None)
def borcherds_report():
    return vgs.verify_psi_and_products()


@pytest.fixture
def record_criterion():
    def record(number, passed, detail):
        line = f"criterion {number:>2}: {'PASS' if passed else 'FAIL'}  {detail}"
        ACCEPTANCE_LINES[number] = line
        print(line)
    return record


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_LINES:
        return
    terminalreporter.section("acceptance criteria")
    for key in sorted(ACCEPTANCE_LINES, key=lambda k: (int(str(k).rstrip("abcdefgh")), str(k))):
        terminalreporter.write_line(ACCEPTANCE_LINES[key])
