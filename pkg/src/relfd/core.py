"""Shared value types: evaluation points, results, method tags and the order class."""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass

from .errors import DomainError

HALF_INTEGER_TOL = 1e-9


class QClass(enum.Enum):
    """How the order q steers the choice of expansion."""

    GENERIC = "generic"
    HALF_INTEGER = "half-integer"
    NONNEG_INTEGER = "nonneg-integer"


class Method(enum.Enum):
    AUTO = "auto"
    NEG_ETA_SERIES = "neg-eta-series"
    LARGE_ETA_GENERIC = "large-eta-generic"
    LARGE_ETA_HALFINT = "large-eta-halfint"
    SMALL_BETA = "small-beta"
    LARGE_BETA_GENERIC = "large-beta-generic"
    LARGE_BETA_HALFINT = "large-beta-halfint"
    QUADRATURE = "quadrature"
    STANDARD = "standard"

    @classmethod
    def parse(cls, text: str) -> "Method":
        """Accept the enum value, its name, or the short aliases ``large-eta`` / ``large-beta``."""
        key = text.strip().lower().replace("_", "-")
        if key in _ALIASES:
            return _ALIASES[key]
        for m in cls:
            if m.value == key:
                return m
        raise ValueError(f"unknown method {text!r}")


_ALIASES = {
    "large-eta": Method.LARGE_ETA_GENERIC,
    "large-beta": Method.LARGE_BETA_GENERIC,
    "neg-eta": Method.NEG_ETA_SERIES,
    "quad": Method.QUADRATURE,
}


def half_integer_m(q: float) -> int | None:
    """Return m = q + 3/2 when q is a half-integer (within tolerance), else None."""
    t = q + 1.5
    r = round(t)
    if abs(t - r) < HALF_INTEGER_TOL:
        return int(r)
    return None


def classify_q(q: float) -> QClass:
    """Classify q; half-integers win over integers since they change the expansion shape."""
    if half_integer_m(q) is not None:
        return QClass.HALF_INTEGER
    r = round(q)
    if r >= 0 and abs(q - r) < HALF_INTEGER_TOL:
        return QClass.NONNEG_INTEGER
    return QClass.GENERIC


@dataclass(frozen=True)
class FdParams:
    """One evaluation point (q, eta, beta) of the relativistic integral."""

    q: float
    eta: float
    beta: float

    def __post_init__(self) -> None:
        for name in ("q", "eta", "beta"):
            v = getattr(self, name)
            if not math.isfinite(v):
                raise DomainError(f"{name} must be finite, got {v!r}", v)
        if self.q < 0:
            raise DomainError(f"order q must be >= 0, got {self.q!r}", self.q)
        if self.beta < 0:
            raise DomainError(f"beta must be >= 0, got {self.beta!r}", self.beta)

    @property
    def qclass(self) -> QClass:
        return classify_q(self.q)


@dataclass(frozen=True)
class EvalResult:
    """Value of an expansion together with a heuristic error estimate.

    ``err_est`` is absolute. For asymptotic sums it is the first omitted term,
    for convergent sums the last added one, for quadrature the integrator's bound.
    """

    value: float
    err_est: float
    terms_used: int
    method: Method

    def __post_init__(self) -> None:
        if not self.err_est >= 0:
            raise ValueError(f"err_est must be >= 0, got {self.err_est!r}")
        if self.terms_used < 1:
            raise ValueError(f"terms_used must be >= 1, got {self.terms_used!r}")

    @property
    def rel_err_est(self) -> float:
        return self.err_est / abs(self.value) if self.value else math.inf
