"""The nonrelativistic integral F_q(eta) and its normalised continuation.

``fhat(q, eta)`` is F_q(eta)/Gamma(q+1), extended to every real q. For q <= -1
the unit-interval piece is written as a contour integral around the origin;
with z = e^{i theta} it becomes a smooth integral over [0, pi] evaluated with
Gauss-Legendre rules of doubling order. The remaining piece is a tail integral
over [1, inf), which vanishes identically at negative integer q.

Also here: the logistic derivatives ``phi1``, the shifted ``phi2`` and the
q-derivative ``psi_aux`` used by the large-beta expansions.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .config import get_config
from .core import EvalResult, Method
from .errors import ConvergenceError, DomainError
from .kernels import KIND_FD, KIND_FD_UPPER, integrate
from .special import digamma_int_halfint, gamma_real, rgamma, tau

EPS = 2.220446049250313e-16


def _gamma_q1(q: float) -> float:
    return gamma_real(q + 1.0)


def fd_std_neg_eta(q: float, eta: float, tol: float = 1e-15) -> EvalResult:
    """Convergent series Gamma(q+1) sum_{n>=1} (-1)^(n-1) e^(n eta) / n^(q+1) for eta < 0."""
    if not eta < 0:
        raise DomainError(f"series needs eta < 0, got {eta!r}", eta)
    if not q > -1:
        raise DomainError(f"series needs q > -1, got {q!r}", q)
    total = 0.0
    x = math.exp(eta)
    pw = 1.0
    for n in range(1, 10_001):
        pw *= x
        term = pw * n ** (-q - 1.0)
        total += term if n % 2 else -term
        if term <= tol * abs(total):
            g = _gamma_q1(q)
            return EvalResult(g * total, abs(g) * term, n, Method.NEG_ETA_SERIES)
    raise ConvergenceError(f"negative-eta series did not converge for eta={eta}", total)


def _cospi(q: float) -> float:
    twice = 2.0 * q
    if twice == math.floor(twice):
        k = int(twice) % 4
        return (1.0, 0.0, -1.0, 0.0)[k]
    return math.cos(math.pi * q)


def _sinpi(q: float) -> float:
    return _cospi(q - 0.5)


def sommerfeld_terms(q: float, eta: float, n_terms: int) -> list[float]:
    """Main-series terms Gamma(q+1) tau_2n eta^(q+1-2n) / Gamma(q+2-2n), n < n_terms."""
    g = _gamma_q1(q)
    out = []
    for n in range(n_terms):
        r = rgamma(q + 2.0 - 2 * n)
        out.append(0.0 if r == 0.0 else g * tau(2 * n) * r * eta ** (q + 1.0 - 2 * n))
    return out


def fd_std_sommerfeld(q: float, eta: float, n_terms: int) -> EvalResult:
    """Large-eta expansion with ``n_terms`` main terms plus the reflected correction.

    The correction cos(pi q) F_q(-eta) is exact zero for half-integer q and is
    then skipped. ``err_est`` is the first omitted main term (exact zero once the
    series terminates for integer q, then a rounding-level bound is reported).
    """
    if not eta > 0:
        raise DomainError(f"Sommerfeld expansion needs eta > 0, got {eta!r}", eta)
    if n_terms < 1:
        raise DomainError(f"n_terms must be >= 1, got {n_terms!r}", n_terms)
    terms = sommerfeld_terms(q, eta, n_terms + 1)
    value = math.fsum(terms[:n_terms])
    c = _cospi(q)
    if c != 0.0:
        value += c * fd_standard_eval(q, -eta).value
    err = abs(terms[n_terms])
    if err == 0.0:
        err = 4 * EPS * abs(value)
    return EvalResult(value, err, n_terms, Method.STANDARD)


def sommerfeld_optimal(q: float, eta: float, max_terms: int = 200) -> EvalResult:
    """Sommerfeld expansion truncated just before its smallest term."""
    n_terms = 1
    g = _gamma_q1(q)
    lead = g * eta ** (q + 1.0)
    prev = abs(lead * rgamma(q + 2.0))
    while n_terms < max_terms:
        nxt = abs(lead * tau(2 * n_terms) * rgamma(q + 2.0 - 2 * n_terms) * eta ** (-2.0 * n_terms))
        if nxt == 0.0:
            # integer q: the remaining terms all vanish
            n_terms += 1
            break
        if nxt >= prev:
            break
        prev = nxt
        n_terms += 1
        if nxt < 1e-3 * EPS * abs(lead):
            break
    return fd_std_sommerfeld(q, eta, n_terms)


def _tail_points(eta: float, start: float) -> tuple[float, ...]:
    pts = [start]
    if eta > start:
        pts.append(eta)
    knee = max(eta, start)
    pts.append(max(2.0 * eta, knee + 40.0))
    pts.append(math.inf)
    return tuple(pts)


def _quad_std_piece(q: float, eta: float, a: float, b: float | None, tol: float) -> tuple[float, float]:
    """int_a^b x^q/(e^(x-eta)+1) dx (b=None means infinity) with a power head when a == 0."""
    cfg = get_config()
    if b is None:
        pts = _tail_points(eta, a)
    else:
        pts = (a, b)
    pexp = 0.0
    if a == 0.0:
        if q < 0.0:
            pexp = 1.0 / (q + 1.0)
        elif q != math.floor(q):
            pexp = 4.0
    val, err, _, ier = integrate(KIND_FD, (q, eta, 0.0), pts, pexp, 0.0, tol, cfg.quad_limit)
    if ier == 1:
        raise ConvergenceError(f"quadrature of F_{q}({eta}) hit the subdivision limit", val, err)
    return val, err


def _upper_tail(q: float, eta: float, tol: float) -> float:
    """int_1^inf x^q (1 - 1/(e^(x-eta)+1)) dx for q < -1.

    Integrated up to X = max(eta, 1) + 40 directly; beyond X the complement is
    written as x^q minus the (exponentially small) ordinary occupation integral.
    """
    cfg = get_config()
    X = max(eta, 1.0) + 40.0
    pts = (1.0, eta, X) if eta > 1.0 else (1.0, X)
    head, err, _, ier = integrate(KIND_FD_UPPER, (q, eta, 0.0), pts, 0.0, 0.0, tol, cfg.quad_limit)
    if ier == 1:
        raise ConvergenceError(f"upper tail quadrature (q={q}, eta={eta}) hit the subdivision limit", head, err)
    far, _, _, _ = integrate(KIND_FD, (q, eta, 0.0), (X, math.inf), 0.0, 0.0, tol, cfg.quad_limit)
    return head - X ** (q + 1.0) / (q + 1.0) - far


def fd_std_quad(q: float, eta: float, tol: float | None = None) -> EvalResult:
    """F_q(eta) by adaptive quadrature, q > -1."""
    if not q > -1:
        raise DomainError(f"quadrature needs q > -1, got {q!r}", q)
    tol = get_config().quad_tol if tol is None else tol
    if eta > 1.0:
        head = _quad_std_piece(q, eta, 0.0, 1.0, tol)
        tail = _quad_std_piece(q, eta, 1.0, None, tol)
        val, err = head[0] + tail[0], head[1] + tail[1]
    else:
        cfg = get_config()
        pexp = 1.0 / (q + 1.0) if q < 0 else (0.0 if q == math.floor(q) else 4.0)
        pts = (0.0, 1.0, 40.0, math.inf)
        val, err, _, ier = integrate(KIND_FD, (q, eta, 0.0), pts, pexp, 0.0, tol, cfg.quad_limit)
        if ier == 1:
            raise ConvergenceError(f"quadrature of F_{q}({eta}) hit the subdivision limit", val, err)
    return EvalResult(val, max(err, 0.0), 1, Method.QUADRATURE)


def fd_standard_eval(q: float, eta: float) -> EvalResult:
    """F_q(eta) for q > -1 by the most suitable route.

    Series for eta <= eta_neg; for eta > 0 and integer q the Sommerfeld sum is
    finite and exact; beyond ``std_sommerfeld_eta`` the optimally truncated
    Sommerfeld expansion; quadrature in between.
    """
    cfg = get_config()
    if eta <= cfg.eta_neg and q > -1:
        return fd_std_neg_eta(q, eta, cfg.tol)
    if eta > 0 and q >= 0 and q == math.floor(q) and q < 60:
        return fd_std_sommerfeld(q, eta, (int(q) + 1) // 2 + 1)
    if eta >= cfg.std_sommerfeld_eta and q >= 0:
        return sommerfeld_optimal(q, eta)
    return fd_std_quad(q, eta)


# ----------------------------------------------------------------- continuation

@lru_cache(maxsize=16)
def _gl_nodes(n: int) -> tuple[np.ndarray, np.ndarray]:
    x, w = np.polynomial.legendre.leggauss(n)
    half = 0.5 * math.pi
    return half * (x + 1.0), half * w


def _theta_terms(mu: float, eta: float, theta: np.ndarray, remainder: bool):
    """Pointwise f and g (or their remainders) on the theta nodes."""
    ct = np.cos(theta)
    st = np.sin(theta)
    cs = np.cos(st)
    c0 = np.cos(mu * theta)
    s0 = np.sin(mu * theta)
    c1 = np.cos(mu * theta + st)
    s1 = np.sin(mu * theta + st)
    expo = -eta - ct
    big = expo > 0.0
    E = np.exp(np.where(big, 0.0, expo))
    w = np.exp(np.where(big, -expo, 0.0))
    den_e = 1.0 + 2.0 * E * cs + E * E
    den_w = w * w + 2.0 * w * cs + 1.0
    if remainder:
        af = c1 - 2.0 * cs * c0
        ag = s1 - 2.0 * cs * s0
        f = np.where(big, (w * af - c0) / den_w, E * (af - E * c0) / den_e)
        g = -theta * np.where(big, (w * ag - s0) / den_w, E * (ag - E * s0) / den_e)
    else:
        f = np.where(big, (w * c1 + w * w * c0) / den_w, (E * c1 + c0) / den_e)
        g = -theta * np.where(big, (w * s1 + w * w * s0) / den_w, (E * s1 + s0) / den_e)
    return f, g


def theta_integrals(mu: float, eta: float, tol: float = 1e-15, need_g: bool = False,
                    remainder: bool | None = None, closed_form: bool = True) -> tuple[float, float]:
    """Return (int_0^pi f, int_0^pi g) for order mu = q + 1.

    For eta >= 0 the cancellation-free remainders f - cos(mu theta) and
    g + theta sin(mu theta) are integrated and the closed forms added back.
    """
    if remainder is None:
        remainder = eta >= 0.0
    prev = None
    n = 16
    while n <= 4096:
        th, wt = _gl_nodes(n)
        f, g = _theta_terms(mu, eta, th, remainder)
        cur = (float(np.dot(wt, f)), float(np.dot(wt, g)) if need_g else 0.0)
        if prev is not None:
            scale_f = max(abs(cur[0]), 1e-300)
            scale_g = max(abs(cur[1]), 1e-300)
            if abs(cur[0] - prev[0]) <= tol * scale_f and abs(cur[1] - prev[1]) <= tol * scale_g:
                break
            # both estimates at rounding level of their pointwise magnitudes
            if (abs(cur[0] - prev[0]) <= 64 * EPS * float(np.dot(wt, np.abs(f)))
                    and abs(cur[1] - prev[1]) <= 64 * EPS * float(np.dot(wt, np.abs(g)))):
                break
        prev = cur
        n *= 2
    else:
        raise ConvergenceError(f"theta integral did not converge (mu={mu}, eta={eta})", prev[0])
    If, Ig = cur
    if remainder and closed_form:
        If += _int_cos(mu)
        Ig -= _int_theta_sin(mu)
    return If, Ig


def _int_cos(mu: float) -> float:
    return math.pi if mu == 0.0 else _sinpi(mu) / mu


def _int_theta_sin(mu: float) -> float:
    if mu == 0.0:
        return 0.0
    return _sinpi(mu) / (mu * mu) - math.pi * _cospi(mu) / mu


@dataclass(frozen=True)
class FhatSplit:
    """The two pieces of F-hat: unit-interval/loop part and the [1, inf) tail."""

    part1: float
    part2: float
    q: float
    eta: float

    @property
    def value(self) -> float:
        return self.part1 + self.part2


def _is_neg_int(q: float) -> bool:
    return q < 0 and q == math.floor(q)


def _is_nonneg_int(q: float) -> bool:
    return q >= 0 and q == math.floor(q)


def _tail_part(q: float, eta: float, tol: float) -> float:
    if _is_neg_int(q):
        return 0.0
    val, _ = _quad_std_piece(q, eta, 1.0, None, tol)
    return val * rgamma(q + 1.0)


def fhat_split(q: float, eta: float, tol: float = 1e-14, route: str = "auto") -> FhatSplit:
    """F-hat_q(eta) as its two pieces; ``route`` is ``auto``, ``direct`` or ``theta``.

    ``direct`` integrates x^q/(e^(x-eta)+1) over [0, 1] and needs q > -1;
    ``theta`` uses the contour form and needs q not a nonnegative integer.
    """
    if route == "auto":
        if q > -1:
            route = "direct"
        elif q < -1 and eta >= 0:
            route = "theta-compensated"
        else:
            route = "theta"
    if route == "direct":
        if not q > -1:
            raise DomainError(f"direct route needs q > -1, got {q!r}", q)
        head, _ = _quad_std_piece(q, eta, 0.0, 1.0, tol)
        return FhatSplit(head * rgamma(q + 1.0), _tail_part(q, eta, tol), q, eta)
    if route == "theta":
        if _is_nonneg_int(q):
            raise DomainError(f"theta route undefined at nonnegative integer q={q!r}", q)
        If, _ = theta_integrals(q + 1.0, eta, min(tol, 1e-14))
        return FhatSplit(gamma_real(-q) / math.pi * If, _tail_part(q, eta, tol), q, eta)
    if route == "theta-compensated":
        # eta >= 0, q < -1: the closed-form parts of both pieces cancel exactly, leaving
        # the remainder integral and the complementary tail
        if not (q < -1 and eta >= 0):
            raise DomainError("compensated route needs q < -1 and eta >= 0", q)
        If, _ = theta_integrals(q + 1.0, eta, min(tol, 1e-14), remainder=True, closed_form=False)
        part2 = 0.0 if _is_neg_int(q) else -_upper_tail(q, eta, tol) * rgamma(q + 1.0)
        return FhatSplit(gamma_real(-q) / math.pi * If, part2, q, eta)
    raise DomainError(f"unknown route {route!r}", route)


def fhat(q: float, eta: float, tol: float = 1e-14, route: str = "auto") -> float:
    """F_q(eta)/Gamma(q+1), valid for every real q."""
    if route == "auto" and q > -1:
        res = fd_standard_eval(q, eta)
        return res.value * rgamma(q + 1.0)
    if route == "auto" and _is_neg_int(q):
        return phi1(int(-q) - 1, eta)
    return fhat_split(q, eta, tol, route).value


# ------------------------------------------------------------ auxiliary functions

@lru_cache(maxsize=None)
def _logistic_poly(k: int) -> tuple[int, ...]:
    """Integer coefficients (ascending powers of sigma) of the k-th derivative of sigma."""
    if k == 0:
        return (0, 1)
    prev = _logistic_poly(k - 1)
    # d/d eta sum c_j s^j = sum j c_j s^(j-1) * (s - s^2)
    out = [0] * (len(prev) + 1)
    for j, c in enumerate(prev):
        if j == 0 or c == 0:
            continue
        out[j] += j * c
        out[j + 1] -= j * c
    return tuple(out)


def phi1(k: int, eta: float) -> float:
    """k-th derivative of the logistic function 1/(e^(-eta)+1)."""
    if k < 0:
        raise DomainError(f"k must be >= 0, got {k!r}", k)
    if eta > 0.0:
        if k == 0:
            return 1.0 / (math.exp(-eta) + 1.0)
        sign = -1.0 if k % 2 == 0 else 1.0
        return sign * phi1(k, -eta)
    s = 1.0 / (math.exp(-eta) + 1.0)
    acc = 0.0
    for c in reversed(_logistic_poly(k)):
        acc = acc * s + c
    return acc


def phi2(k: int, eta: float, q: float, tol: float = 1e-14) -> float:
    """F-hat of order q + 1/2 - k."""
    return fhat(q + 0.5 - k, eta, tol)


def rgamma_derivative_at_pole(k: int) -> float:
    """d/dq [1/Gamma(q+1)] at q = -k-1, which equals (-1)^k k!."""
    return (-1.0) ** k * math.factorial(k)


def psi_aux(k: int, eta: float, tol: float = 1e-14) -> float:
    """Psi_k(eta) = -d/dq F-hat_q(eta) at q = -k-1."""
    if k < 0:
        raise DomainError(f"k must be >= 0, got {k!r}", k)
    if eta <= -1.0:
        return _psi_neg_eta(k, eta, tol)
    kf = math.factorial(k)
    if k >= 1 and eta >= 0.0:
        # closed-form pieces of the theta part cancel the divergent-looking
        # 1/k of the tail; keep only remainders and the complementary tail
        If, Ig = theta_integrals(-float(k), eta, min(tol, 1e-14), need_g=True,
                                 remainder=True, closed_form=False)
        If += _int_cos(-float(k))
        part1 = kf / math.pi * (digamma_int_halfint(2 * k + 2) * If - Ig)
        return part1 + rgamma_derivative_at_pole(k) * _upper_tail(-k - 1.0, eta, tol)
    If, Ig = theta_integrals(-float(k), eta, min(tol, 1e-14), need_g=True)
    part1 = kf / math.pi * (digamma_int_halfint(2 * k + 2) * If - Ig)
    tail, _ = _quad_std_piece(-k - 1.0, eta, 1.0, None, tol)
    part2 = -rgamma_derivative_at_pole(k) * tail
    return part1 + part2


def _psi_neg_eta(k: int, eta: float, tol: float) -> float:
    """Convergent form sum_{n>=2} (-1)^(n-1) e^(n eta) n^k ln n, for eta < 0."""
    x = math.exp(eta)
    total = 0.0
    pw = x
    for n in range(2, 100_000):
        pw *= x
        term = pw * n ** k * math.log(n)
        total += -term if n % 2 == 0 else term
        if term <= tol * 1e-2 * abs(total):
            return total
    raise ConvergenceError(f"Psi series did not converge (k={k}, eta={eta})", total)
