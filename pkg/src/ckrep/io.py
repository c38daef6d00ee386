"""Text formats: matrix files, parameter vectors and the key=value run config.

Matrix file: the first non-blank line holds ``n``, followed by ``n`` rows of
``n`` space-separated 0/1 digits.  ``#`` starts a comment.  Vectors are
space- or comma-separated decimals or ``p/q`` rationals.
"""

from __future__ import annotations

import os
from dataclasses import dataclass, fields, replace
from pathlib import Path

from .errors import MalformedInputError
from .scalars import parse_scalar
from .spectral import ZeroOneMatrix

CONFIG_ENV = "CKREP_CONFIG"


def _content_lines(text: str):
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if line:
            yield lineno, line


def parse_matrix(text: str) -> ZeroOneMatrix:
    lines = list(_content_lines(text))
    if not lines:
        raise MalformedInputError("empty matrix file", line=1)
    lineno, head = lines[0]
    try:
        n = int(head)
    except ValueError:
        raise MalformedInputError(f"expected the dimension n, got {head!r}", line=lineno) from None
    if n < 2:
        raise MalformedInputError(f"dimension must be at least 2, got {n}", line=lineno)
    rows = []
    for lineno, line in lines[1:]:
        tokens = line.replace(",", " ").split()
        if len(tokens) != n:
            raise MalformedInputError(f"expected {n} entries, found {len(tokens)}", line=lineno)
        if any(t not in ("0", "1") for t in tokens):
            raise MalformedInputError("entries must be 0 or 1", line=lineno)
        rows.append([int(t) for t in tokens])
    if len(rows) != n:
        last = lines[-1][0] if lines else 1
        raise MalformedInputError(f"expected {n} rows, found {len(rows)}", line=last)
    return ZeroOneMatrix.from_rows(rows)


def read_matrix(path: str | os.PathLike) -> ZeroOneMatrix:
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise MalformedInputError(f"cannot read {path}: {exc.strerror}") from None
    return parse_matrix(text)


def format_matrix(A: ZeroOneMatrix) -> str:
    return "\n".join([str(A.n)] + [" ".join(map(str, row)) for row in A.rows]) + "\n"


def parse_vector(text: str, exact: bool = True) -> tuple:
    tokens = text.replace(",", " ").split()
    if not tokens:
        raise MalformedInputError("empty vector")
    out = []
    for k, t in enumerate(tokens, start=1):
        try:
            out.append(parse_scalar(t, exact))
        except ValueError:
            raise MalformedInputError(f"entry {k} is not a number: {t!r}") from None
    return tuple(out)


# run configuration -------------------------------------------------------------

@dataclass(frozen=True)
class RunConfig:
    tol: float = 1e-9
    eig_tol: float = 1e-12
    pmax: int = 64
    qmax: int = 10**6
    max_len: int = 4
    word_cap: int = 24
    exact: bool = True
    output: str = "json"
    epsilon: float = 1e-6
    m_table: int = 20
    m_cap: int = 10**6
    workers: int = 1

    def __post_init__(self):
        for name in ("tol", "eig_tol", "epsilon"):
            if not getattr(self, name) > 0:
                raise MalformedInputError(f"{name} must be positive")
        for name in ("pmax", "qmax", "word_cap", "m_table", "m_cap", "workers"):
            if getattr(self, name) < 1:
                raise MalformedInputError(f"{name} must be positive")
        if self.max_len < 0 or self.max_len > self.word_cap:
            raise MalformedInputError(f"max_len must lie in 0..{self.word_cap}")
        if self.output not in ("json", "table"):
            raise MalformedInputError("output must be json or table")

    def updated(self, **overrides) -> "RunConfig":
        return replace(self, **{k: v for k, v in overrides.items() if v is not None})


_BOOL = {"1": True, "true": True, "yes": True, "on": True,
         "0": False, "false": False, "no": False, "off": False}


def _convert(name: str, kind, raw: str, lineno: int):
    try:
        if kind is bool or kind == "bool":
            return _BOOL[raw.lower()]
        if kind is int or kind == "int":
            return int(raw)
        if kind is float or kind == "float":
            return float(raw)
        return raw
    except (KeyError, ValueError):
        raise MalformedInputError(f"bad value for {name}: {raw!r}", line=lineno) from None


def parse_config(text: str, base: RunConfig | None = None) -> RunConfig:
    """``key = value`` lines; unknown keys are errors.  ``scalar_mode`` maps to ``exact``."""
    base = base or RunConfig()
    kinds = {f.name: f.type for f in fields(RunConfig)}
    values: dict = {}
    for lineno, line in _content_lines(text):
        if "=" not in line:
            raise MalformedInputError("expected key = value", line=lineno)
        key, raw = (s.strip() for s in line.split("=", 1))
        key = key.replace("-", "_")
        if key == "scalar_mode":
            if raw not in ("exact", "float"):
                raise MalformedInputError("scalar_mode is exact or float", line=lineno)
            values["exact"] = raw == "exact"
            continue
        if key not in kinds:
            raise MalformedInputError(f"unknown config key {key!r}", line=lineno)
        values[key] = _convert(key, kinds[key], raw, lineno)
    return replace(base, **values)


def load_config(path: str | os.PathLike | None = None) -> RunConfig:
    """Config from ``path``, else from ``$CKREP_CONFIG``, else defaults."""
    path = path or os.environ.get(CONFIG_ENV)
    if not path:
        return RunConfig()
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise MalformedInputError(f"cannot read config {path}: {exc.strerror}") from None
    return parse_config(text)
