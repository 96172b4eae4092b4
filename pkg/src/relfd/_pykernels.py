"""Pure-Python quadrature kernels.

This module mirrors ``_ckernels.pyx`` operation for operation, so both backends
agree to rounding. It is used when the compiled extension is unavailable or
when ``RELFD_PURE_PYTHON=1`` is set.

Integrand kinds (parameters ``p0, p1, p2``):

* ``KIND_FD``:     x^p0 * sqrt(1 + p2*x/2) / (exp(x - p1) + 1)
* ``KIND_KUMMER``: x^(p0-1) * exp(-x) * (1 + x/p2)^p1
* ``KIND_FD_UPPER``: x^p0 * sqrt(1 + p2*x/2) / (exp(p1 - x) + 1), the complement
  of the occupation factor

Panels come in three flavours: plain, a mapped tail ``x = a + t/(1-t)`` over
``t in [0, 1)``, and a power-law head ``x = t^p`` that removes the algebraic
endpoint behaviour at zero.
"""
from __future__ import annotations

import math

KIND_FD = 0
KIND_KUMMER = 1
KIND_FD_UPPER = 2

MODE_PLAIN = 0
MODE_TAIL = 1
MODE_POWER = 2

EPMACH = 2.220446049250313e-16
UFLOW = 2.2250738585072014e-308

XGK = (
    0.995657163025808080735527280689003, 0.973906528517171720077964012084452,
    0.930157491355708226001207180059508, 0.865063366688984510732096688423493,
    0.780817726586416897063717578345042, 0.679409568299024406234327365114874,
    0.562757134668604683339000099272694, 0.433395394129247190799265943165784,
    0.294392862701460198131126603103866, 0.148874338981631210884826001129720,
    0.0,
)
WGK = (
    0.011694638867371874278064396062192, 0.032558162307964727478818972459390,
    0.054755896574351996031381300244580, 0.075039674810919952767043140916190,
    0.093125454583697605535065465083366, 0.109387158802297641899210590325805,
    0.123491976262065851077600525409078, 0.134709217311473325928054001771707,
    0.142775938577060080797094273138717, 0.147739104901338491374841515972068,
    0.149445554002916905664936468389821,
)
WG = (
    0.066671344308688137593568809893332, 0.149451349150580593145776339657697,
    0.219086362515982043995534934228163, 0.269266719309996355091226921569469,
    0.295524224714752870173892994651338,
)


def integrand(kind: int, p0: float, p1: float, p2: float, x: float) -> float:
    if kind == KIND_FD_UPPER:
        u = p1 - x
        if u > 30.0:
            return math.exp(p0 * math.log(x) + 0.5 * math.log1p(0.5 * p2 * x) - u - math.log1p(math.exp(-u)))
        if u > 0.0:
            e = math.exp(-u)
            occ = e / (1.0 + e)
        else:
            occ = 1.0 / (math.exp(u) + 1.0)
        return math.pow(x, p0) * math.sqrt(1.0 + 0.5 * p2 * x) * occ
    if kind == KIND_FD:
        if x <= 0.0:
            return 0.0 if p0 > 0.0 else (math.inf if p0 < 0.0 else 1.0 / (math.exp(-p1) + 1.0))
        u = x - p1
        if u > 30.0:
            # log form keeps x^q finite where the occupation factor underflows
            return math.exp(p0 * math.log(x) + 0.5 * math.log1p(0.5 * p2 * x) - u - math.log1p(math.exp(-u)))
        if u > 0.0:
            e = math.exp(-u)
            occ = e / (1.0 + e)
        else:
            occ = 1.0 / (math.exp(u) + 1.0)
        return math.pow(x, p0) * math.sqrt(1.0 + 0.5 * p2 * x) * occ
    if x <= 0.0:
        return 0.0 if p0 > 1.0 else (1.0 if p0 == 1.0 else math.inf)
    if x > 30.0:
        return math.exp((p0 - 1.0) * math.log(x) - x + p1 * math.log1p(x / p2))
    return math.pow(x, p0 - 1.0) * math.exp(-x) * math.pow(1.0 + x / p2, p1)


def _panel_value(kind, p0, p1, p2, mode, origin, pexp, t):
    if mode == MODE_PLAIN:
        return integrand(kind, p0, p1, p2, t)
    if mode == MODE_TAIL:
        s = 1.0 / (1.0 - t)
        return integrand(kind, p0, p1, p2, origin + t * s) * s * s
    # x = t^pexp: fold x^power and the Jacobian into one power of t
    x = math.pow(t, pexp)
    if kind == KIND_FD:
        return pexp * math.pow(t, pexp * (p0 + 1.0) - 1.0) * _fd_rest(p1, p2, x)
    return pexp * math.pow(t, pexp * p0 - 1.0) * math.exp(-x) * math.pow(1.0 + x / p2, p1)


def _fd_rest(p1, p2, x):
    """sqrt(1 + p2 x / 2) / (e^(x - p1) + 1)."""
    u = x - p1
    if u > 30.0:
        return math.exp(0.5 * math.log1p(0.5 * p2 * x) - u - math.log1p(math.exp(-u)))
    if u > 0.0:
        e = math.exp(-u)
        occ = e / (1.0 + e)
    else:
        occ = 1.0 / (math.exp(u) + 1.0)
    return math.sqrt(1.0 + 0.5 * p2 * x) * occ


def qk21(kind, p0, p1, p2, mode, origin, pexp, a, b):
    """21-point Gauss-Kronrod rule on [a, b]; returns (result, abserr, resabs)."""
    centr = 0.5 * (a + b)
    hlgth = 0.5 * (b - a)
    dhlgth = abs(hlgth)
    fv1 = [0.0] * 10
    fv2 = [0.0] * 10
    resg = 0.0
    fc = _panel_value(kind, p0, p1, p2, mode, origin, pexp, centr)
    resk = WGK[10] * fc
    resabs = abs(resk)
    for j in range(5):
        jtw = 2 * j + 1
        absc = hlgth * XGK[jtw]
        f1 = _panel_value(kind, p0, p1, p2, mode, origin, pexp, centr - absc)
        f2 = _panel_value(kind, p0, p1, p2, mode, origin, pexp, centr + absc)
        fv1[jtw] = f1
        fv2[jtw] = f2
        fsum = f1 + f2
        resg += WG[j] * fsum
        resk += WGK[jtw] * fsum
        resabs += WGK[jtw] * (abs(f1) + abs(f2))
    for j in range(5):
        jtwm1 = 2 * j
        absc = hlgth * XGK[jtwm1]
        f1 = _panel_value(kind, p0, p1, p2, mode, origin, pexp, centr - absc)
        f2 = _panel_value(kind, p0, p1, p2, mode, origin, pexp, centr + absc)
        fv1[jtwm1] = f1
        fv2[jtwm1] = f2
        fsum = f1 + f2
        resk += WGK[jtwm1] * fsum
        resabs += WGK[jtwm1] * (abs(f1) + abs(f2))
    reskh = resk * 0.5
    resasc = WGK[10] * abs(fc - reskh)
    for j in range(10):
        resasc += WGK[j] * (abs(fv1[j] - reskh) + abs(fv2[j] - reskh))
    result = resk * hlgth
    resabs *= dhlgth
    resasc *= dhlgth
    abserr = abs((resk - resg) * hlgth)
    if resasc != 0.0 and abserr != 0.0:
        ratio = 200.0 * abserr / resasc
        abserr = resasc if ratio >= 1.0 else resasc * math.pow(ratio, 1.5)
    floor = 0.0
    if resabs > UFLOW / (50.0 * EPMACH):
        floor = 50.0 * EPMACH * resabs
        abserr = max(floor, abserr)
    return result, abserr, floor


def integrate(kind: int, params: tuple, points: tuple, pexp: float,
              epsabs: float, epsrel: float, limit: int) -> tuple[float, float, int, int]:
    """Globally adaptive Gauss-Kronrod integration over consecutive panels.

    ``points`` are increasing breakpoints; a final ``inf`` makes the last panel
    a mapped tail. ``pexp > 0`` turns the first panel (which must start at 0)
    into a power-law head. Returns ``(value, abserr, neval, ier)`` with ier 0 on
    success, 1 when ``limit`` subdivisions were exhausted and 2 when every
    remaining panel sits at its rounding floor.
    """
    p0, p1, p2 = float(params[0]), float(params[1]), float(params[2])
    lo_l: list[float] = []
    hi_l: list[float] = []
    mode_l: list[int] = []
    org_l: list[float] = []
    res_l: list[float] = []
    err_l: list[float] = []
    flr_l: list[float] = []
    npan = len(points) - 1
    for i in range(npan):
        a = float(points[i])
        b = float(points[i + 1])
        if math.isinf(b):
            mode, org, lo, hi = MODE_TAIL, a, 0.0, 1.0
        elif i == 0 and pexp > 0.0:
            mode, org, lo, hi = MODE_POWER, 0.0, 0.0, math.pow(b, 1.0 / pexp)
        else:
            mode, org, lo, hi = MODE_PLAIN, 0.0, a, b
        r, e, f = qk21(kind, p0, p1, p2, mode, org, pexp, lo, hi)
        lo_l.append(lo)
        hi_l.append(hi)
        mode_l.append(mode)
        org_l.append(org)
        res_l.append(r)
        err_l.append(e)
        flr_l.append(f)
    neval = 21 * npan
    ier = 0
    while True:
        result = sum(res_l)
        errsum = sum(err_l)
        if errsum <= max(epsabs, epsrel * abs(result)):
            break
        # largest error among panels still able to improve
        imax = -1
        emax = -1.0
        negligible = 1e-3 * EPMACH * abs(result)
        for i in range(len(err_l)):
            e = err_l[i]
            if e > emax and e > flr_l[i] * 1.0000001 and e > negligible:
                width = hi_l[i] - lo_l[i]
                if width > 1e3 * EPMACH * max(abs(lo_l[i]), abs(hi_l[i])) + UFLOW:
                    imax = i
                    emax = e
        if imax < 0:
            ier = 2
            break
        if len(err_l) >= limit:
            ier = 1
            break
        a = lo_l[imax]
        b = hi_l[imax]
        mid = 0.5 * (a + b)
        mode = mode_l[imax]
        org = org_l[imax]
        r1, e1, f1 = qk21(kind, p0, p1, p2, mode, org, pexp, a, mid)
        r2, e2, f2 = qk21(kind, p0, p1, p2, mode, org, pexp, mid, b)
        neval += 42
        hi_l[imax] = mid
        res_l[imax] = r1
        err_l[imax] = e1
        flr_l[imax] = f1
        lo_l.append(mid)
        hi_l.append(b)
        mode_l.append(mode)
        org_l.append(org)
        res_l.append(r2)
        err_l.append(e2)
        flr_l.append(f2)
    return result, errsum, neval, ier
