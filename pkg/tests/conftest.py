"""Shared fixtures and independent oracles for the test suite."""

from __future__ import annotations

import random
from fractions import Fraction
from pathlib import Path

import numpy as np
import pytest

from ckrep.spectral import ZeroOneMatrix

DATA = Path(__file__).resolve().parents[1] / "src" / "ckrep" / "data"
GOLDEN = Path(__file__).resolve().parent / "golden"


def pytest_addoption(parser):
    parser.addoption("--regen-golden", action="store_true", default=False,
                     help="rewrite tests/golden/*.json from the current CLI output")


@pytest.fixture
def regen_golden(request) -> bool:
    return request.config.getoption("--regen-golden")


# oracles ----------------------------------------------------------------------

def irreducible_by_powers(rows) -> bool:
    """``(I + A)^(n-1) > 0`` entrywise; independent of the library's reachability closure."""
    A = np.array(rows, dtype=np.int64)
    n = len(A)
    P = np.linalg.matrix_power(np.eye(n, dtype=np.int64) + A, n - 1)
    return bool((P > 0).all())


def admissible_by_definition(rows) -> bool:
    A = np.array(rows)
    if (A.sum(axis=0) == 0).any() or (A.sum(axis=1) == 0).any():
        return False
    perm = (A.sum(axis=0) == 1).all() and (A.sum(axis=1) == 1).all()
    return irreducible_by_powers(rows) and not perm


def random_admissible(rng: random.Random, n: int, density: float = 0.6) -> ZeroOneMatrix:
    while True:
        rows = [[int(rng.random() < density) for _ in range(n)] for _ in range(n)]
        if admissible_by_definition(rows):
            return ZeroOneMatrix.from_rows(rows)


def inverse_point(A: ZeroOneMatrix, x):
    """Rates ``a_i = x_i / (A x)_i`` making ``x`` a fixed vector of ``diag(a) A``.

    Returns ``None`` when some rate is not below one.  Since ``x > 0`` and
    ``diag(a) A`` is irreducible, ``x`` is its Perron vector and the PF
    eigenvalue is exactly one.
    """
    n = A.n
    a = []
    for i in range(n):
        s = sum(A.rows[i][j] * x[j] for j in range(n))
        if not x[i] < s:
            return None
        a.append(x[i] / s)
    return tuple(a)


def random_rational_point(rng: random.Random, A: ZeroOneMatrix, denom: int = 12):
    """Random exact ``(a, x)`` on Lambda(A) by the inverse construction."""
    for _ in range(10_000):
        r = [rng.randint(1, denom) for _ in range(A.n)]
        x = tuple(Fraction(v, sum(r)) for v in r)
        a = inverse_point(A, x)
        if a is not None:
            return a, x
    raise RuntimeError("no rational point found")


@pytest.fixture
def rng() -> random.Random:
    return random.Random(20261014)


THREE_STATE = ZeroOneMatrix.from_rows([[0, 1, 1], [1, 0, 1], [1, 1, 1]])
GOLDEN_SHIFT = ZeroOneMatrix.from_rows([[1, 1], [1, 0]])
O2 = ZeroOneMatrix.ones(2)


# acceptance reporting --------------------------------------------------------------

ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES, key=lambda s: int(s.split("criterion ")[1].split(":")[0])):
            terminalreporter.write_line(line)
