"""Tunable thresholds and term budgets.

Configuration files hold one ``key = value`` pair per line; ``#`` starts a
comment. Keys are the field names of :class:`Config`. A bundled preset can be
loaded by name (``benchmark-grid``) instead of a path.
"""
from __future__ import annotations

import contextlib
import contextvars
import dataclasses
from dataclasses import dataclass, fields
from importlib import resources
from pathlib import Path
from typing import Iterator

from .errors import UsageError


@dataclass(frozen=True)
class Config:
    # Auto routing for the relativistic integral
    eta_neg: float = -0.5            # eta <= this: convergent negative-eta series
    eta_big: float = 15.0            # eta >= this: large-eta expansions ...
    large_eta_min_beta_eta: float = 20.0   # ... provided beta*eta is at least this
    beta_big: float = 30.0           # beta >= this: large-beta expansions ...
    large_beta_min_ratio: float = 8.0      # ... provided beta >= ratio * max(eta, 1)
    beta_small: float = 0.05         # beta <= this: small-beta expansion ...
    small_beta_max_beta_eta: float = 0.01  # ... provided beta*max(eta, 1) <= this
    # Kummer U routing, in terms of z = 2s/beta
    z_series: float = 2.0            # z <= this: convergent M / logarithmic series
    z_switch: float = 40.0           # z >= this: asymptotic series; between: quadrature
    # Term budgets (highest retained index, so n_terms=10 keeps indices 0..10)
    large_eta_nterms: int = 10
    large_beta_kmax: int = 5
    small_beta_nterms: int = 8
    sommerfeld_nterms: int = 8       # number of Sommerfeld terms (count, not index)
    # Standard integral routing
    std_sommerfeld_eta: float = 30.0
    # Tolerances
    tol: float = 1e-15
    quad_tol: float = 1e-14
    oracle_tol: float = 1e-13
    quad_limit: int = 2000

    def replace(self, **changes: object) -> "Config":
        return dataclasses.replace(self, **changes)


_FIELD_TYPES = {f.name: f.type for f in fields(Config)}


def _coerce(key: str, raw: str) -> float | int:
    kind = _FIELD_TYPES[key]
    try:
        if kind in ("int", int):
            return int(raw)
        return float(raw)
    except ValueError as exc:
        raise UsageError(f"config key {key!r}: cannot parse {raw!r}") from exc


def parse_config_text(text: str, base: Config | None = None) -> Config:
    """Apply ``key = value`` lines on top of ``base`` (defaults when None)."""
    changes: dict[str, float | int] = {}
    for lineno, line in enumerate(text.splitlines(), 1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise UsageError(f"config line {lineno}: expected 'key = value', got {line!r}")
        key, raw = (s.strip() for s in line.split("=", 1))
        if key not in _FIELD_TYPES:
            raise UsageError(f"config line {lineno}: unknown key {key!r}")
        changes[key] = _coerce(key, raw)
    return (base or Config()).replace(**changes)


def preset_names() -> list[str]:
    root = resources.files("relfd") / "presets"
    return sorted(p.name[:-4] for p in root.iterdir() if p.name.endswith(".cfg"))


def load_config(source: str | Path, base: Config | None = None) -> Config:
    """Load a config file, or a bundled preset when ``source`` names one."""
    name = str(source)
    if name in preset_names():
        text = (resources.files("relfd") / "presets" / f"{name}.cfg").read_text()
    else:
        text = Path(source).read_text()
    return parse_config_text(text, base)


_current: contextvars.ContextVar[Config] = contextvars.ContextVar("relfd_config", default=Config())


def get_config() -> Config:
    return _current.get()


def set_config(cfg: Config) -> None:
    _current.set(cfg)


@contextlib.contextmanager
def using_config(cfg: Config | None = None, **changes: object) -> Iterator[Config]:
    """Temporarily install ``cfg`` (or the current config with ``changes``)."""
    new = (cfg or get_config()).replace(**changes) if changes else (cfg or get_config())
    token = _current.set(new)
    try:
        yield new
    finally:
        _current.reset(token)
