import numpy as np
import pytest

from noninc.gf import FieldTable
from noninc.plane import build_pg2

# Fano plane from its usual line list, independent of any field arithmetic.
FANO_LINES = [(0, 1, 2), (0, 3, 4), (0, 5, 6), (1, 3, 5), (1, 4, 6), (2, 3, 6), (2, 4, 5)]


def fano_matrix():
    m = np.zeros((7, 7), dtype=int)
    for j, line in enumerate(FANO_LINES):
        m[list(line), j] = 1
    return m


@pytest.fixture(scope="session")
def fano():
    return build_pg2(FieldTable(2, 1))


@pytest.fixture(scope="session")
def pg3():
    return build_pg2(FieldTable(3, 1))


@pytest.fixture(scope="session")
def pg4():
    return build_pg2(FieldTable(2, 2))


@pytest.fixture(scope="session")
def pg8():
    return build_pg2(FieldTable(2, 3))


@pytest.fixture(scope="session")
def pg16():
    return build_pg2(FieldTable(2, 4))


@pytest.fixture(scope="session")
def planes(fano, pg3, pg4, pg8):
    return {2: fano, 3: pg3, 4: pg4, 8: pg8}


# acceptance criteria report: filled in by tests/test_acceptance.py
ACCEPTANCE = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for key in sorted(ACCEPTANCE):
        ok, text = ACCEPTANCE[key]
        terminalreporter.write_line(f"[{'PASS' if ok else 'FAIL'}] {key}: {text}")
