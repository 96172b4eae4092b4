"""Expansion coefficients for the relativistic integral and a thread-safe cache.

Generic orders use ``a`` (large eta) and ``c``, ``d`` (large beta). Half-integer
orders q = m - 3/2 use the families ``P``, ``Q``, ``R``, their products ``p``,
``q`` with the tau series, and ``Ptilde``, ``Qtilde`` (large beta).
"""
from __future__ import annotations

import math
import threading
from dataclasses import dataclass

from .core import QClass, half_integer_m
from .errors import DomainError
from .special import digamma_int_halfint, gamma_real, pochhammer, tau_table


def _require_generic(q: float) -> None:
    if half_integer_m(q) is not None:
        raise DomainError(f"q={q!r} is a half-integer; use the m-indexed coefficient families", q)


def _require_m(m: int, beta: float | None = None) -> None:
    if int(m) != m or m < 2:
        raise DomainError(f"m must be an integer >= 2, got {m!r}", m)
    if beta is not None and not beta > 0:
        raise DomainError(f"beta must be > 0, got {beta!r}", beta)


def tau_convolve(series: list[float], n_max: int) -> list[float]:
    """Cauchy product of ``series`` with the tau series, truncated at degree n_max."""
    t = tau_table(n_max)
    out = []
    for n in range(n_max + 1):
        acc = 0.0
        for j in range(0, n + 1, 2):
            acc += t[j] * series[n - j]
        out.append(acc)
    return out


def m_series_coeffs(q: float, beta: float, n_max: int) -> list[float]:
    """Taylor coefficients in s of M(-1/2; -q-1/2; 2s/beta)."""
    x = 2.0 / beta
    out = [1.0]
    for k in range(n_max):
        out.append(out[-1] * x * (k - 0.5) / ((k + 1) * (-q - 0.5 + k)))
    return out


def a_coeffs(q: float, beta: float, n_max: int) -> list[float]:
    """Coefficients a_0..a_n_max of the large-eta asymptotic sum for generic q."""
    _require_generic(q)
    if not beta > 0:
        raise DomainError(f"beta must be > 0, got {beta!r}", beta)
    return tau_convolve(m_series_coeffs(q, beta, n_max), n_max)


def _psi_bracket(m: int, k: int, log2b: float) -> float:
    # ln(2/beta) + psi(m - 1/2 + k) - psi(1 + k) - psi(m + k + 1)
    return (log2b + digamma_int_halfint(2 * m - 1 + 2 * k)
            - digamma_int_halfint(2 + 2 * k) - digamma_int_halfint(2 * m + 2 * k + 2))


def a_m_constant(m: int) -> float:
    """A_m = (-1)^(m+1) / (m! Gamma(-1/2))."""
    _require_m(m)
    return (-1.0) ** (m + 1) / (math.factorial(m) * gamma_real(-0.5))


def pqr_family(m: int, beta: float, k_max: int):
    """Return ``(A_m, P, Q, R, p, q)`` for q = m - 3/2.

    ``R`` holds R_{m,1}..R_{m,m}; the other lists run over k = 0..k_max.
    """
    _require_m(m, beta)
    m = int(m)
    x = 2.0 / beta
    log2b = math.log(x)
    P = [1.0]
    for k in range(k_max):
        P.append(P[-1] * x * (m - 0.5 + k) / ((k + 1) * (m + 1 + k)))
    Q = [P[k] * _psi_bracket(m, k, log2b) for k in range(k_max + 1)]
    g = gamma_real(m - 0.5)
    R = []
    for k in range(1, m + 1):
        R.append(x ** (-k) * math.factorial(k - 1) * pochhammer(1.5 - m + k, m - k)
                 / (g * math.factorial(m - k)))
    return a_m_constant(m), P, Q, R, tau_convolve(P, k_max), tau_convolve(Q, k_max)


def cd_coeffs(q: float, k_max: int) -> tuple[list[float], list[float]]:
    """Large-beta coefficients c_k = 2^k (q+1)_k / (k! (q+5/2)_k) and d_k = 2^k (-1/2)_k / (k! (-q-1/2)_k)."""
    _require_generic(q)
    c = [1.0]
    d = [1.0]
    for k in range(k_max):
        c.append(c[-1] * 2.0 * (q + 1 + k) / ((k + 1) * (q + 2.5 + k)))
        d.append(d[-1] * 2.0 * (k - 0.5) / ((k + 1) * (-q - 0.5 + k)))
    return c, d


def tilde_pq(m: int, beta: float, k_max: int) -> tuple[list[float], list[float]]:
    """Large-beta half-integer coefficients; Qtilde depends on beta through ln(2/beta)."""
    _require_m(m, beta)
    m = int(m)
    log2b = math.log(2.0 / beta)
    Pt = [1.0]
    for k in range(k_max):
        Pt.append(Pt[-1] * 2.0 * (m - 0.5 + k) / ((k + 1) * (m + 1 + k)))
    Qt = [Pt[k] * _psi_bracket(m, k, log2b) for k in range(k_max + 1)]
    return Pt, Qt


@dataclass(frozen=True)
class CoefficientSet:
    """Immutable bundle of the coefficient lists for one cache key."""

    qclass: QClass
    order: float
    beta: float
    k_max: int
    a: tuple[float, ...] = ()
    c: tuple[float, ...] = ()
    d: tuple[float, ...] = ()
    A_m: float = 0.0
    P: tuple[float, ...] = ()
    Q: tuple[float, ...] = ()
    R: tuple[float, ...] = ()
    p_cauchy: tuple[float, ...] = ()
    q_cauchy: tuple[float, ...] = ()
    Ptilde: tuple[float, ...] = ()
    Qtilde: tuple[float, ...] = ()


MAX_K = 64


class CoefficientCache:
    """Memoises coefficient sets keyed by (qclass, q or m, beta, k_max).

    Reads are lock-free dictionary lookups; a missing entry is built and
    published under a lock so concurrent callers never see partial state.
    """

    def __init__(self) -> None:
        self._entries: dict[tuple, CoefficientSet] = {}
        self._lock = threading.Lock()

    def __len__(self) -> int:
        return len(self._entries)

    def clear(self) -> None:
        with self._lock:
            self._entries.clear()

    def generic(self, q: float, beta: float, k_max: int) -> CoefficientSet:
        key = (QClass.GENERIC, float(q), float(beta), int(k_max))
        hit = self._entries.get(key)
        if hit is not None:
            return hit
        _check_kmax(k_max)
        with self._lock:
            hit = self._entries.get(key)
            if hit is None:
                c, d = cd_coeffs(q, k_max)
                hit = CoefficientSet(QClass.GENERIC, float(q), float(beta), int(k_max),
                                     a=tuple(a_coeffs(q, beta, k_max)), c=tuple(c), d=tuple(d))
                self._entries[key] = hit
        return hit

    def half_integer(self, m: int, beta: float, k_max: int) -> CoefficientSet:
        key = (QClass.HALF_INTEGER, int(m), float(beta), int(k_max))
        hit = self._entries.get(key)
        if hit is not None:
            return hit
        _check_kmax(k_max)
        with self._lock:
            hit = self._entries.get(key)
            if hit is None:
                A, P, Q, R, p, qc = pqr_family(m, beta, k_max)
                Pt, Qt = tilde_pq(m, beta, k_max)
                hit = CoefficientSet(QClass.HALF_INTEGER, float(m), float(beta), int(k_max),
                                     A_m=A, P=tuple(P), Q=tuple(Q), R=tuple(R),
                                     p_cauchy=tuple(p), q_cauchy=tuple(qc),
                                     Ptilde=tuple(Pt), Qtilde=tuple(Qt))
                self._entries[key] = hit
        return hit


def _check_kmax(k_max: int) -> None:
    if not 0 <= k_max <= MAX_K:
        raise DomainError(f"k_max must lie in 0..{MAX_K}, got {k_max!r}", k_max)


CACHE = CoefficientCache()
