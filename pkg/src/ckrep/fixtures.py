"""Shipped example points (``data/fixtures.json``) and their matrix files."""

from __future__ import annotations

import json
from dataclasses import dataclass
from functools import lru_cache
from importlib import resources

from .errors import DomainError
from .interval import IntervalSystem, build_interval_system
from .io import parse_matrix, parse_vector
from .spectral import LambdaPoint, ZeroOneMatrix, check_lambda_membership


@dataclass(frozen=True)
class Fixture:
    name: str
    matrix_file: str
    A: ZeroOneMatrix
    a: tuple
    exact: bool
    note: str


def data_path(name: str):
    return resources.files("ckrep") / "data" / name


@lru_cache(maxsize=None)
def _catalog() -> dict:
    return json.loads(data_path("fixtures.json").read_text())


def fixture_names() -> list[str]:
    return list(_catalog()["fixtures"])


def pair_names() -> list[str]:
    return list(_catalog()["pairs"])


@lru_cache(maxsize=None)
def load_fixture(name: str) -> Fixture:
    try:
        entry = _catalog()["fixtures"][name]
    except KeyError:
        raise DomainError(f"unknown fixture {name!r}; known: {', '.join(fixture_names())}") from None
    exact = entry["mode"] == "exact"
    A = parse_matrix(data_path(entry["matrix"]).read_text())
    a = parse_vector(" ".join(entry["a"]), exact=exact)
    return Fixture(name, entry["matrix"], A, a, exact, entry.get("note", ""))


@lru_cache(maxsize=None)
def fixture_point(name: str) -> LambdaPoint:
    f = load_fixture(name)
    return check_lambda_membership(f.A, f.a)


def fixture_system(name: str) -> IntervalSystem:
    return build_interval_system(fixture_point(name))


def fixture_pair(name: str) -> tuple[LambdaPoint, LambdaPoint]:
    try:
        first, second = _catalog()["pairs"][name]
    except KeyError:
        raise DomainError(f"unknown pair {name!r}; known: {', '.join(pair_names())}") from None
    return fixture_point(first), fixture_point(second)
