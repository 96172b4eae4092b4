"""Brute-force references: adaptive quadrature of the defining integrals and
exact truncated polynomial products. Nothing here uses an expansion, so these
routines serve as ground truth for the series code."""
from __future__ import annotations

import math
from dataclasses import dataclass

from .config import get_config
from .core import FdParams
from .errors import ConvergenceError, DomainError, UsageError
from .kernels import KIND_FD, integrate


@dataclass(frozen=True)
class QuadResult:
    value: float
    abs_err_est: float
    evaluations: int

    def __post_init__(self) -> None:
        if not self.abs_err_est >= 0:
            raise ValueError("abs_err_est must be >= 0")
        if self.evaluations < 1:
            raise ValueError("evaluations must be >= 1")


def _breakpoints(eta: float) -> tuple[float, ...]:
    knee = max(eta, 0.0)
    tail = max(2.0 * eta, 40.0)
    pts = [0.0]
    if knee > 1.0:
        pts.append(1.0)
    if knee > 0.0:
        pts.append(knee)
    if tail > pts[-1]:
        pts.append(tail)
    else:
        pts.append(pts[-1] + 40.0)
    pts.append(math.inf)
    # the first panel carries the power-law head and must end at a finite point
    if pts[1] > 1.0:
        pts.insert(1, 1.0)
    return tuple(pts)


def _quad(q: float, eta: float, beta: float, tol: float) -> QuadResult:
    if not tol > 0:
        raise DomainError(f"tol must be > 0, got {tol!r}", tol)
    if q < 0:
        pexp = 1.0 / (q + 1.0)
    elif q == math.floor(q):
        pexp = 0.0
    else:
        pexp = 4.0
    cfg = get_config()
    val, err, neval, ier = integrate(KIND_FD, (q, eta, beta), _breakpoints(eta), pexp,
                                     tol * 1e-300, tol, max(cfg.quad_limit, 4000))
    if ier == 1:
        raise ConvergenceError(
            f"oracle quadrature for q={q}, eta={eta}, beta={beta} did not reach tol={tol}", val, err)
    return QuadResult(val, err, neval)


def quad_fd_rel(p: FdParams, tol: float | None = None) -> QuadResult:
    """Relativistic integral int_0^inf x^q sqrt(1+beta x/2)/(e^(x-eta)+1) dx by quadrature."""
    return _quad(p.q, p.eta, p.beta, get_config().oracle_tol if tol is None else tol)


def quad_fd_std(q: float, eta: float, tol: float | None = None) -> QuadResult:
    """Standard integral for q > -1 (the singularity at 0 is removed by x = t^(1/(q+1)))."""
    if not q > -1:
        raise DomainError(f"q must be > -1, got {q!r}", q)
    if not math.isfinite(eta):
        raise DomainError(f"eta must be finite, got {eta!r}", eta)
    return _quad(q, eta, 0.0, get_config().oracle_tol if tol is None else tol)


def taylor_product_oracle(series_a: list[float], series_b: list[float], order: int) -> list[float]:
    """Coefficients 0..order of the product of two power series.

    At least one input must supply ``order + 1`` coefficients; a shorter input
    is read as an exact polynomial (zero beyond its length).
    """
    if order < 0:
        raise UsageError(f"order must be >= 0, got {order!r}")
    if not series_a or not series_b:
        raise UsageError("series must be nonempty")
    if max(len(series_a), len(series_b)) < order + 1:
        raise UsageError(f"need at least {order + 1} coefficients in one series")
    a = list(series_a) + [0.0] * (order + 1)
    b = list(series_b) + [0.0] * (order + 1)
    return [math.fsum(a[j] * b[n - j] for j in range(n + 1)) for n in range(order + 1)]
