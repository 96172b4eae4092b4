"""Confluent hypergeometric functions M and U on the positive real axis, and the
slowly varying factor U_q(s, beta) of the negative-eta series.

Three evaluation routes exist for U:

* convergent series (two-M connection formula, or the logarithmic form when
  b is an integer), accurate for small z only, because for larger z the two
  pieces grow like e^z and cancel;
* an integral over (0, inf) evaluated by adaptive quadrature, used for
  intermediate z;
* the asymptotic series, optimally truncated, used for large z.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field

from .config import get_config
from .core import QClass, classify_q, half_integer_m
from .errors import ConvergenceError, DomainError
from .kernels import KIND_KUMMER, integrate
from .special import digamma_int_halfint, gamma_real, rgamma

MAX_SERIES_TERMS = 10_000


def _is_nonpos_int(x: float) -> bool:
    return x <= 0 and x == math.floor(x)


def _m_positive(a: float, b: float, z: float, tol: float) -> float:
    term = 1.0
    total = 1.0
    small = 0
    for k in range(MAX_SERIES_TERMS):
        term *= (a + k) / (b + k) * z / (k + 1)
        total += term
        if abs(term) <= tol * abs(total):
            small += 1
            if small == 3:
                return total
        else:
            small = 0
    raise ConvergenceError(f"M({a}, {b}, {z}) series did not converge", total, abs(term))


def kummer_m(a: float, b: float, z: float, tol: float = 1e-16) -> float:
    """Kummer's function M(a, b, z) = 1F1(a; b; z) for real arguments.

    Negative z goes through Kummer's transformation M(a,b,z) = e^z M(b-a,b,-z),
    so the Taylor series is always summed at a nonnegative argument.
    """
    if _is_nonpos_int(b):
        raise DomainError(f"M(a, b, z) undefined for b = {b!r}", b)
    if not math.isfinite(z):
        raise DomainError(f"z must be finite, got {z!r}", z)
    if z == 0.0:
        return 1.0
    if z < 0.0:
        return math.exp(z) * _m_positive(b - a, b, -z, tol)
    return _m_positive(a, b, z, tol)


def kummer_u_asymptotic(a: float, b: float, z: float, max_terms: int = 60) -> tuple[float, float, int]:
    """Asymptotic series of U(a, b, z) for large positive z.

    Sums z^-a * sum_k (a)_k (a-b+1)_k / k! (-z)^-k up to its smallest term or
    ``max_terms`` terms. Returns ``(value, err_est, terms)`` where ``err_est``
    is the first omitted term times z^-a, plus rounding once terms are added.
    """
    if not z > 0.0:
        raise DomainError(f"asymptotic U needs z > 0, got {z!r}", z)
    scaled, err, terms = _u_asymptotic_scaled(a, b, z, max_terms)
    zpow = z ** (-a)
    return scaled * zpow, err * zpow, terms


def _u_asymptotic_scaled(a: float, b: float, z: float, max_terms: int) -> tuple[float, float, int]:
    """z^a U(a, b, z) from the asymptotic series.

    The error is the first omitted term plus a summation rounding bound.
    """
    total, err, terms = _u_asymptotic_raw(a, b, z, max_terms)
    return total, err + 2.220446049250313e-16 * 2 * (terms - 1) * abs(total), terms


def _u_asymptotic_raw(a: float, b: float, z: float, max_terms: int) -> tuple[float, float, int]:
    c = a - b + 1.0
    term = 1.0
    total = 1.0
    terms = 1
    while True:
        k = terms - 1
        nxt = term * (a + k) * (c + k) / ((k + 1) * -z)
        if terms >= max_terms or abs(nxt) >= abs(term):
            return total, abs(nxt), terms
        total += nxt
        term = nxt
        terms += 1
        if nxt == 0.0:
            return total, 0.0, terms
        if abs(nxt) <= 1e-3 * 2.220446049250313e-16 * abs(total):
            k = terms - 1
            return total, abs(nxt * (a + k) * (c + k) / ((k + 1) * z)), terms


def _digamma_half_grid(x: float) -> float:
    """psi(x) for x a (possibly negative) integer or half-integer, not a pole."""
    shift = 0.0
    while x < 0.5:
        shift -= 1.0 / x
        x += 1.0
    return digamma_int_halfint(int(round(2 * x))) + shift


def kummer_u_logcase(a: float, m_plus_1: int, z: float, tol: float = 1e-16) -> float:
    """U(a, n+1, z) for integer n >= 0 through its logarithmic series.

    The series part carries ln z and digamma values; a finite sum of negative
    powers of z is added. ``2a`` must be an integer so the digamma values come
    from closed forms.
    """
    n = int(m_plus_1) - 1
    if n < 0 or m_plus_1 != int(m_plus_1):
        raise DomainError(f"second parameter must be a positive integer, got {m_plus_1!r}", m_plus_1)
    if not z > 0.0:
        raise DomainError(f"z must be > 0, got {z!r}", z)
    if abs(2 * a - round(2 * a)) > 1e-12:
        raise DomainError(f"logarithmic U needs 2a integral, got a={a!r}", a)
    finite = 0.0
    if n > 0:
        ra = rgamma(a)
        if ra != 0.0:
            for k in range(1, n + 1):
                c = math.factorial(k - 1) / math.factorial(n - k)
                for j in range(n - k):
                    c *= 1.0 - a + k + j
                finite += c * z ** (-k)
            finite *= ra
    pref = (-1.0) ** (n + 1) / math.factorial(n) * rgamma(a - n)
    if pref == 0.0:
        return finite
    lnz = math.log(z)
    if _is_nonpos_int(a):
        # Gamma(a-n) is then infinite as well; the series terminates and the digamma
        # poles cancel against it, a case outside this module's needs
        raise DomainError(f"a = {a!r} is a nonpositive integer", a)
    psi_a = _digamma_half_grid(a)
    psi_1 = -0.5772156649015329
    psi_n = _digamma_half_grid(n + 1.0)
    coef = 1.0
    total = coef * (lnz + psi_a - psi_1 - psi_n)
    small = 0
    for k in range(MAX_SERIES_TERMS):
        coef *= (a + k) / ((n + 1 + k) * (k + 1)) * z
        psi_a += 1.0 / (a + k)
        psi_1 += 1.0 / (k + 1)
        psi_n += 1.0 / (n + 1 + k)
        term = coef * (lnz + psi_a - psi_1 - psi_n)
        total += term
        if abs(term) <= tol * abs(total):
            small += 1
            if small == 3:
                return pref * total + finite
        else:
            small = 0
    raise ConvergenceError(f"logarithmic U({a}, {m_plus_1}, {z}) did not converge", pref * total + finite)


def _u_quad_scaled(a: float, b: float, z: float, tol: float) -> tuple[float, float]:
    """z^a U(a, b, z) = (1/Gamma(a)) int_0^inf e^-x x^(a-1) (1 + x/z)^(b-a-1) dx, a > 0."""
    if not a > 0.0:
        raise DomainError(f"integral representation of U needs a > 0, got {a!r}", a)
    c = b - a - 1.0
    am1 = a - 1.0
    if am1 >= 0.0 and am1 == math.floor(am1):
        pexp = 0.0
    elif a >= 1.0:
        pexp = 4.0
    else:
        pexp = 1.0 / a
    hi = max(40.0, 2.0 * abs(c) + 40.0)
    cfg = get_config()
    val, err, _, ier = integrate(KIND_KUMMER, (a, c, z), (0.0, 1.0, hi, math.inf), pexp, 0.0, tol, cfg.quad_limit)
    if ier == 1:
        raise ConvergenceError(f"U({a}, {b}, {z}) quadrature hit the subdivision limit", val * rgamma(a), err * rgamma(a))
    r = rgamma(a)
    return val * r, err * abs(r)


def kummer_u_quad(a: float, b: float, z: float, tol: float = 1e-14) -> tuple[float, float]:
    """U(a, b, z) from its integral representation; returns ``(value, abserr)``."""
    if not z > 0.0:
        raise DomainError(f"z must be > 0, got {z!r}", z)
    v, e = _u_quad_scaled(a, b, z, tol)
    s = z ** (-a)
    return v * s, e * s


def _u_series_scaled(a: float, b: float, z: float, tol: float) -> float:
    """z^a U(a, b, z) from a convergent series (connection formula or log form)."""
    nb = round(b)
    if abs(b - nb) < 1e-12 and nb >= 1:
        return z ** a * kummer_u_logcase(a, int(nb), z, tol)
    if abs(b - nb) < 1e-12:
        # integer b <= 0: use U(a,b,z) = z^(1-b) U(a-b+1, 2-b, z)
        return z ** a * z ** (1 - nb) * kummer_u_logcase(a - nb + 1, int(2 - nb), z, tol)
    first = gamma_real(1.0 - b) * rgamma(a - b + 1.0) * kummer_m(a, b, z, tol)
    second = gamma_real(b - 1.0) * rgamma(a) * z ** (1.0 - b) * kummer_m(a - b + 1.0, 2.0 - b, z, tol)
    return z ** a * (first + second)


def kummer_u_scaled(a: float, b: float, z: float, route: str = "auto",
                    max_terms: int = 60) -> tuple[float, float, str]:
    """z^a U(a, b, z) with an absolute error estimate and the route taken.

    ``route`` is ``auto``, ``series``, ``quadrature`` or ``asymptotic``.
    """
    if not z > 0.0:
        raise DomainError(f"z must be > 0, got {z!r}", z)
    cfg = get_config()
    if route == "auto":
        if z >= cfg.z_switch:
            route = "asymptotic"
        elif z <= cfg.z_series:
            route = "series"
        else:
            route = "quadrature"
    if route == "asymptotic":
        v, e, _ = _u_asymptotic_scaled(a, b, z, max_terms)
        return v, e, route
    if route == "series":
        v = _u_series_scaled(a, b, z, cfg.tol)
        return v, 8 * 2.220446049250313e-16 * abs(v), route
    if route == "quadrature":
        v, e = _u_quad_scaled(a, b, z, cfg.quad_tol)
        return v, e, route
    raise DomainError(f"unknown route {route!r}", route)


def kummer_u(a: float, b: float, z: float, route: str = "auto") -> float:
    """U(a, b, z) for z > 0 by the route chosen in :func:`kummer_u_scaled`."""
    v, _, _ = kummer_u_scaled(a, b, z, route)
    return v * z ** (-a)


@dataclass(frozen=True)
class UqSpec:
    """Order q and beta defining the factor U_q(s, beta)."""

    q: float
    beta: float
    qclass: QClass = field(default=None)  # type: ignore[assignment]

    def __post_init__(self) -> None:
        if not self.beta >= 0.0:
            raise DomainError(f"beta must be >= 0, got {self.beta!r}", self.beta)
        if self.qclass is None:
            object.__setattr__(self, "qclass", classify_q(self.q))
        elif self.qclass is QClass.HALF_INTEGER:
            m = half_integer_m(self.q)
            if m is None or m < 2:
                raise DomainError(f"q={self.q!r} is not a half-integer with m >= 2", self.q)


def u_q_with_error(spec: UqSpec, s: float, route: str = "auto") -> tuple[float, float, str]:
    """U_q(s, beta) = (2s/beta)^(q+1) U(q+1, q+5/2, 2s/beta), with error and route."""
    if not s > 0.0:
        raise DomainError(f"s must be > 0, got {s!r}", s)
    if spec.beta == 0.0:
        return 1.0, 0.0, "limit"
    z = 2.0 * s / spec.beta
    cfg = get_config()
    if route == "auto":
        if z >= cfg.z_switch:
            route = "asymptotic"
        elif z <= cfg.z_series:
            route = "series"
        else:
            route = "quadrature"
    q = spec.q
    if route == "asymptotic":
        # second form: z^(-1/2) U(-1/2, -q-1/2, z), whose scaled series is the same sum
        v, e, _ = _u_asymptotic_scaled(-0.5, -q - 0.5, z, 60)
        return v, e, route
    if route == "series":
        m = half_integer_m(q)
        if m is not None and m >= 1:
            v = z ** (m - 0.5) * kummer_u_logcase(m - 0.5, m + 1, z, cfg.tol)
        else:
            v = _u_series_scaled(q + 1.0, q + 2.5, z, cfg.tol)
        return v, 8 * 2.220446049250313e-16 * abs(v), route
    return kummer_u_scaled(q + 1.0, q + 2.5, z, route)


def u_q(spec: UqSpec, s: float, route: str = "auto") -> float:
    """U_q(s, beta); exactly 1 when beta = 0."""
    return u_q_with_error(spec, s, route)[0]
