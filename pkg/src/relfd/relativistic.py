"""The relativistic Fermi-Dirac integral

    F_q(eta, beta) = int_0^inf x^q sqrt(1 + beta x / 2) / (e^(x - eta) + 1) dx

through a convergent series for negative eta, large-eta and large-beta
asymptotic expansions (separate forms for half-integer q), a small-beta
expansion, and quadrature. :func:`fd_rel_eval` picks a method automatically.

Term budgets ``n_terms`` and ``k_max`` name the highest retained index, so
``n_terms=10`` sums indices 0..10. Asymptotic sums stop earlier if their terms
start to grow, and ``terms_used`` records where they stopped.
"""
from __future__ import annotations

import math

from .coefficients import CACHE, CoefficientSet
from .config import Config, get_config, using_config
from .core import EvalResult, FdParams, Method, QClass, half_integer_m
from .errors import ConvergenceError, DomainError, RelFDError, UsageError
from .kummer import UqSpec, kummer_m, kummer_u_scaled, u_q_with_error
from .oracle import quad_fd_rel
from .special import EULER_GAMMA, gamma_real, rgamma
from .standard import fd_std_neg_eta, fd_standard_eval, fhat, phi1, psi_aux

EPS = 2.220446049250313e-16
_GAMMA_MINUS_HALF = -2.0 * math.sqrt(math.pi)


def _sinpi(q: float) -> float:
    if 2.0 * q == math.floor(2.0 * q):
        return (0.0, 1.0, 0.0, -1.0)[int(2.0 * q) % 4]
    return math.sin(math.pi * q)


# ------------------------------------------------------------------ negative eta

def fd_rel_neg_eta(p: FdParams, tol: float = 1e-15, max_terms: int = 500) -> EvalResult:
    """Convergent series Gamma(q+1) sum (-1)^(n-1) e^(n eta) n^(-q-1) U_q(n, beta), eta < 0."""
    if not p.eta < 0:
        raise DomainError(f"negative-eta series needs eta < 0, got {p.eta!r}", p.eta)
    if p.beta == 0.0:
        r = fd_std_neg_eta(p.q, p.eta, tol)
        return EvalResult(r.value, r.err_est, r.terms_used, Method.NEG_ETA_SERIES)
    spec = UqSpec(p.q, p.beta)
    x = math.exp(p.eta)
    pw = 1.0
    total = 0.0
    uerr = 0.0
    for n in range(1, max_terms + 1):
        pw *= x
        u, ue, _ = u_q_with_error(spec, float(n))
        base = pw * n ** (-p.q - 1.0)
        term = base * u
        total += term if n % 2 else -term
        uerr += base * ue
        if abs(term) <= tol * abs(total):
            g = gamma_real(p.q + 1.0)
            return EvalResult(g * total, g * (abs(term) + uerr), n, Method.NEG_ETA_SERIES)
    raise ConvergenceError(f"negative-eta series needed more than {max_terms} terms", gamma_real(p.q + 1.0) * total)


# ------------------------------------------------------------ large eta, generic q

def _generic_prefactors(q: float, beta: float) -> tuple[float, float]:
    x = 2.0 / beta
    p1 = x ** (q + 1.0) * gamma_real(-q - 1.5) * gamma_real(q + 1.0) / _GAMMA_MINUS_HALF
    p2 = x ** -0.5 * gamma_real(q + 1.5)
    return p1, p2


def _alternating_exp_series(eta: float, term_fn, start: int, tol: float, max_terms: int = 2000) -> float:
    """sum_{n>=start} (-1)^n e^(-n eta) term_fn(n), stopped once terms are negligible."""
    total = 0.0
    for n in range(start, start + max_terms):
        w = math.exp(-n * eta)
        t = w * term_fn(n)
        total += -t if n % 2 else t
        if w == 0.0 or abs(t) <= tol * max(abs(total), 1e-300):
            return total
    raise ConvergenceError(f"exponential series did not converge for eta={eta}", total)


def _optimal_sum(terms: list[float]) -> tuple[float, float, int]:
    """Sum terms until they start to grow; returns (sum, error bound, count).

    These series interleave two envelopes (even and odd indices), so growth is
    judged against the term two places back and the error bound is the larger
    of the last kept and the first omitted term.
    """
    total = 0.0
    for i, t in enumerate(terms[:-1]):
        if i >= 3 and abs(t) > abs(terms[i - 2]):
            return total, max(abs(t), abs(terms[i - 1])), i
        total += t
    return total, max(abs(terms[-1]), abs(terms[-2])), len(terms) - 1


def large_eta_generic_parts(p: FdParams, n_terms: int, tol: float = 1e-16) -> dict:
    """Components of the generic large-eta expansion (for diagnostics and tests)."""
    q, eta, beta = p.q, p.eta, p.beta
    coef = CACHE.generic(q, beta, n_terms + 1)
    p1, p2 = _generic_prefactors(q, beta)
    conv = _alternating_exp_series(eta, lambda n: kummer_m(q + 1.0, q + 2.5, -2.0 * n / beta), 1, tol)
    F1 = 1.0 + conv
    lead = eta ** (q + 1.5)
    terms = [lead * coef.a[n] * rgamma(q + 2.5 - n) * eta ** (-n) for n in range(n_terms + 2)]
    asym, omitted, used = _optimal_sum(terms)
    s = _sinpi(q)
    if s != 0.0:
        expo = s * _alternating_exp_series(
            eta, lambda n: n ** (-q - 1.5) * kummer_m(-0.5, -q - 0.5, -2.0 * n / beta), 1, tol)
    else:
        expo = 0.0
    return {"p1": p1, "p2": p2, "F1": F1, "asymptotic": asym, "exp_small": expo,
            "omitted": omitted, "terms_used": used}


def fd_rel_large_eta_generic(p: FdParams, n_terms: int | None = None,
                             include_exp_small: bool = True) -> EvalResult:
    """Large-eta expansion for q not a half-integer.

    Two gamma-weighted pieces: a convergent series of Kummer M values, and an
    asymptotic series in 1/eta optionally completed by exponentially small
    terms of order e^(-n eta).
    """
    _check_large_eta(p)
    if half_integer_m(p.q) is not None:
        raise UsageError(f"q={p.q!r} is a half-integer; use the half-integer large-eta method")
    n_terms = get_config().large_eta_nterms if n_terms is None else n_terms
    if n_terms < 0:
        raise DomainError(f"n_terms must be >= 0, got {n_terms!r}", n_terms)
    parts = large_eta_generic_parts(p, n_terms)
    f2 = parts["asymptotic"] + (parts["exp_small"] if include_exp_small else 0.0)
    value = parts["p1"] * parts["F1"] + parts["p2"] * f2
    err = abs(parts["p2"]) * parts["omitted"] + 4 * EPS * abs(value)
    return EvalResult(value, err, parts["terms_used"], Method.LARGE_ETA_GENERIC)


def _check_large_eta(p: FdParams) -> None:
    if not p.eta > 0:
        raise DomainError(f"large-eta expansion needs eta > 0, got {p.eta!r}", p.eta)
    if not p.beta > 0:
        raise DomainError(f"large-eta expansion needs beta > 0, got {p.beta!r}", p.beta)


# -------------------------------------------------------- half-integer q = m - 3/2

def _require_halfint(q: float) -> int:
    m = half_integer_m(q)
    if m is None:
        raise UsageError(f"q={q!r} is not a half-integer (q = m - 3/2)")
    if m < 2:
        raise UsageError(f"half-integer expansions need m = q + 3/2 >= 2, got m={m}")
    return m


def f_r_part(m: int, eta: float, beta: float) -> float:
    """Finite sum over standard integrals of integer order m-1, ..., 0."""
    x = 2.0 / beta
    total = 0.0
    c = 1.0
    for j in range(m):
        total += c * x ** (j - 0.5) * fd_standard_eval(float(m - j - 1), eta).value
        c *= -(j - 0.5) / (j + 1)
    return total


def cox_finite_sum(q: float, eta: float, beta: float) -> float:
    """(beta/2)^(1/2) sum_{k=0..q+1/2} (-1)^k (-1/2)_k / k! (2/beta)^k F_{q+1/2-k}(eta).

    The finite large-beta sum found in older literature; it coincides with the
    R-part of the half-integer expansions.
    """
    m = _require_halfint(q)
    kq = m - 1
    x = 2.0 / beta
    c = 1.0
    total = 0.0
    for k in range(kq + 1):
        total += c * x ** k * fd_standard_eval(q + 0.5 - k, eta).value
        c *= -(k - 0.5) / (k + 1)
    return math.sqrt(beta / 2.0) * total


def exp_small_halfint(m: int, eta: float, beta: float, form: str = "corrected",
                      tol: float = 1e-17) -> float:
    """Exponentially small series of the half-integer large-eta expansion.

    ``printed`` is the pole sum of the full Kummer U factor. ``corrected``
    subtracts the poles of its finite part, which the exact integer-order
    integrals in the R-part already contain.
    """
    if form == "none":
        return 0.0
    if not eta > 0:
        raise DomainError(f"exponentially small series needs eta > 0, got {eta!r}", eta)
    x = 2.0 / beta

    def printed_term(n: int) -> float:
        z = 2.0 * n / beta
        scaled, _, _ = kummer_u_scaled(1.5, m + 1.0, z)
        return math.exp(-z) * scaled * z ** -1.5

    printed = 0.5 * math.sqrt(math.pi) * x ** (m - 0.5) * (-1.0) ** m * \
        _alternating_exp_series(eta, printed_term, 1, tol)
    if form == "printed":
        return printed
    if form != "corrected":
        raise DomainError(f"unknown form {form!r}", form)
    coef = CACHE.half_integer(m, beta, 0)
    R = coef.R

    def r_term(n: int) -> float:
        return sum(R[k - 1] * (-float(n)) ** (-k) for k in range(1, m + 1))

    return printed - gamma_real(m - 0.5) * x ** (m - 0.5) * _alternating_exp_series(eta, r_term, 1, tol)


def fd_rel_large_eta_halfint(p: FdParams, n_terms: int | None = None,
                             exp_small: str = "corrected") -> EvalResult:
    """Large-eta expansion for q = m - 3/2, m >= 2.

    ``exp_small`` selects the exponentially small completion: ``corrected``
    (default), ``printed`` or ``none``.
    """
    _check_large_eta(p)
    m = _require_halfint(p.q)
    n_terms = get_config().large_eta_nterms if n_terms is None else n_terms
    if n_terms < 0:
        raise DomainError(f"n_terms must be >= 0, got {n_terms!r}", n_terms)
    coef = CACHE.half_integer(m, p.beta, n_terms + 1)
    eta = p.eta
    pc = coef.p_cauchy
    terms = [-(EULER_GAMMA + math.log(eta)) * pc[0]]
    for k in range(1, n_terms + 2):
        terms.append((-1.0) ** k * pc[k] * math.factorial(k - 1) * eta ** (-k))
    fp_sum, omitted, used = _optimal_sum(terms)
    fp = coef.A_m * fp_sum
    fq = coef.A_m * coef.q_cauchy[0]
    pref = gamma_real(m - 0.5) * (2.0 / p.beta) ** (m - 0.5)
    fr = f_r_part(m, eta, p.beta)
    fs = exp_small_halfint(m, eta, p.beta, exp_small)
    value = pref * (fp + fq) + fr + fs
    err = abs(pref * coef.A_m) * omitted + 4 * EPS * abs(value)
    return EvalResult(value, err, used, Method.LARGE_ETA_HALFINT)


# ----------------------------------------------------------------- small beta

def fd_rel_small_beta(p: FdParams, n_terms: int | None = None) -> EvalResult:
    """Expansion sum_n (-1)^n (-1/2)_n / n! (beta/2)^n F_{q+n}(eta) for n = 0..n_terms."""
    n_terms = get_config().small_beta_nterms if n_terms is None else n_terms
    if n_terms < 0:
        raise DomainError(f"n_terms must be >= 0, got {n_terms!r}", n_terms)
    if p.beta == 0.0:
        r = fd_standard_eval(p.q, p.eta)
        return EvalResult(r.value, r.err_est, 1, Method.SMALL_BETA)
    h = 0.5 * p.beta
    c = 1.0
    terms = []
    for n in range(n_terms + 2):
        terms.append(c * fd_standard_eval(p.q + n, p.eta).value)
        c *= -(n - 0.5) / (n + 1) * h
    value = math.fsum(terms[:-1])
    return EvalResult(value, abs(terms[-1]) + 4 * EPS * abs(value), n_terms + 1, Method.SMALL_BETA)


# ------------------------------------------------------------------ large beta

def fd_rel_large_beta_generic(p: FdParams, k_max: int | None = None) -> EvalResult:
    """Large-beta expansion for q not a half-integer, using logistic derivatives
    and F-hat at orders q + 1/2 - k (negative orders reached through the
    analytic continuation)."""
    if not p.beta > 0:
        raise DomainError(f"large-beta expansion needs beta > 0, got {p.beta!r}", p.beta)
    if half_integer_m(p.q) is not None:
        raise UsageError(f"q={p.q!r} is a half-integer; use the half-integer large-beta method")
    k_max = get_config().large_beta_kmax if k_max is None else k_max
    if k_max < 0:
        raise DomainError(f"k_max must be >= 0, got {k_max!r}", k_max)
    coef = CACHE.generic(p.q, p.beta, k_max + 1)
    p1, p2 = _generic_prefactors(p.q, p.beta)
    t1 = [coef.c[k] * p.beta ** (-k) * phi1(k, p.eta) for k in range(k_max + 2)]
    t2 = [coef.d[k] * p.beta ** (-k) * fhat(p.q + 0.5 - k, p.eta) for k in range(k_max + 2)]
    value = p1 * math.fsum(t1[:-1]) + p2 * math.fsum(t2[:-1])
    err = max(abs(p1 * t1[-1]), abs(p2 * t2[-1])) + 4 * EPS * abs(value)
    return EvalResult(value, err, k_max + 1, Method.LARGE_BETA_GENERIC)


def fd_rel_large_beta_halfint(p: FdParams, k_max: int | None = None,
                              diagnostics: dict | None = None) -> EvalResult:
    """Large-beta expansion for q = m - 3/2 built from Psi_k, logistic derivatives
    and the finite R-part. No exponentially small completion is added; pass a
    dict as ``diagnostics`` to receive its magnitude (eta > 0 only) under ``exp_small``."""
    if not p.beta > 0:
        raise DomainError(f"large-beta expansion needs beta > 0, got {p.beta!r}", p.beta)
    m = _require_halfint(p.q)
    k_max = get_config().large_beta_kmax if k_max is None else k_max
    if k_max < 0:
        raise DomainError(f"k_max must be >= 0, got {k_max!r}", k_max)
    coef: CoefficientSet = CACHE.half_integer(m, p.beta, k_max + 1)
    tp = [coef.Ptilde[k] * p.beta ** (-k) * psi_aux(k, p.eta) for k in range(k_max + 2)]
    tq = [coef.Qtilde[k] * p.beta ** (-k) * phi1(k, p.eta) for k in range(k_max + 2)]
    pref = gamma_real(m - 0.5) * (2.0 / p.beta) ** (m - 0.5) * coef.A_m
    fr = f_r_part(m, p.eta, p.beta)
    value = pref * (math.fsum(tp[:-1]) + math.fsum(tq[:-1])) + fr
    err = abs(pref) * (abs(tp[-1]) + abs(tq[-1])) + 4 * EPS * abs(value)
    if diagnostics is not None:
        diagnostics["exp_small"] = exp_small_halfint(m, p.eta, p.beta) if p.eta > 0 else math.nan
        diagnostics["r_part"] = fr
    return EvalResult(value, err, k_max + 1, Method.LARGE_BETA_HALFINT)


# ------------------------------------------------------------------ quadrature

def fd_rel_quadrature(p: FdParams, tol: float | None = None) -> EvalResult:
    r = quad_fd_rel(p, get_config().quad_tol if tol is None else tol)
    return EvalResult(r.value, r.abs_err_est, 1, Method.QUADRATURE)


# ------------------------------------------------------------------ dispatcher

def choose_method(p: FdParams, cfg: Config | None = None) -> Method:
    """The method Auto would use at ``p``."""
    cfg = cfg or get_config()
    half = p.qclass is QClass.HALF_INTEGER
    if p.beta == 0.0:
        return Method.STANDARD
    if p.eta <= cfg.eta_neg:
        return Method.NEG_ETA_SERIES
    if p.eta >= cfg.eta_big and p.beta * p.eta >= cfg.large_eta_min_beta_eta:
        return Method.LARGE_ETA_HALFINT if half else Method.LARGE_ETA_GENERIC
    if p.beta >= cfg.beta_big and p.beta >= cfg.large_beta_min_ratio * max(p.eta, 1.0):
        return Method.LARGE_BETA_HALFINT if half else Method.LARGE_BETA_GENERIC
    if p.beta <= cfg.beta_small and p.beta * max(p.eta, 1.0) <= cfg.small_beta_max_beta_eta:
        return Method.SMALL_BETA
    return Method.QUADRATURE


_HALF_ONLY = {Method.LARGE_ETA_HALFINT, Method.LARGE_BETA_HALFINT}
_GENERIC_ONLY = {Method.LARGE_ETA_GENERIC, Method.LARGE_BETA_GENERIC}


def fd_rel_eval(p: FdParams, method: Method = Method.AUTO, cfg: Config | None = None, *,
                n_terms: int | None = None, k_max: int | None = None,
                include_exp_small: bool = True, tol: float | None = None) -> EvalResult:
    """Evaluate F_q(eta, beta) with ``method`` (Auto picks one from thresholds in ``cfg``).

    ``n_terms`` feeds the large-eta and small-beta methods, ``k_max`` the
    large-beta ones. Errors raised underneath carry a ``method`` attribute.
    """
    with using_config(cfg or get_config()) as active:
        chosen = choose_method(p, active) if method is Method.AUTO else method
        half = p.qclass is QClass.HALF_INTEGER
        if chosen in _HALF_ONLY and not half:
            raise UsageError(f"method {chosen.value} needs a half-integer q, got q={p.q!r}")
        if chosen in _GENERIC_ONLY and half:
            raise UsageError(f"method {chosen.value} needs q that is not a half-integer, got q={p.q!r}")
        try:
            return _run(p, chosen, active, n_terms, k_max, include_exp_small, tol)
        except RelFDError as exc:
            exc.method = chosen  # type: ignore[attr-defined]
            raise


def _run(p: FdParams, method: Method, cfg: Config, n_terms, k_max, include_exp_small, tol) -> EvalResult:
    if method is Method.STANDARD:
        if p.beta != 0.0:
            raise UsageError("the standard method applies to beta = 0 only")
        r = fd_standard_eval(p.q, p.eta)
        return EvalResult(r.value, r.err_est, r.terms_used, Method.STANDARD)
    if method is Method.NEG_ETA_SERIES:
        return fd_rel_neg_eta(p, cfg.tol if tol is None else tol)
    if method is Method.LARGE_ETA_GENERIC:
        return fd_rel_large_eta_generic(p, n_terms, include_exp_small)
    if method is Method.LARGE_ETA_HALFINT:
        return fd_rel_large_eta_halfint(p, n_terms, "corrected" if include_exp_small else "none")
    if method is Method.SMALL_BETA:
        return fd_rel_small_beta(p, n_terms)
    if method is Method.LARGE_BETA_GENERIC:
        return fd_rel_large_beta_generic(p, k_max)
    if method is Method.LARGE_BETA_HALFINT:
        return fd_rel_large_beta_halfint(p, k_max)
    if method is Method.QUADRATURE:
        return fd_rel_quadrature(p, tol)
    raise UsageError(f"unsupported method {method!r}")
