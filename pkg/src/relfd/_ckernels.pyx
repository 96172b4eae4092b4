# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True, initializedcheck=False
"""Compiled quadrature kernels; arithmetic mirrors ``_pykernels`` exactly."""
from libc.math cimport exp, log, log1p, pow, sqrt, fabs, INFINITY, isinf
from libc.stdlib cimport malloc, free

cdef int KIND_FD = 0
cdef int KIND_KUMMER = 1
cdef int MODE_PLAIN = 0
cdef int MODE_TAIL = 1
cdef int MODE_POWER = 2

cdef double EPMACH = 2.220446049250313e-16
cdef double UFLOW = 2.2250738585072014e-308

cdef double[11] XGK
cdef double[11] WGK
cdef double[5] WG

XGK[:] = [
    0.995657163025808080735527280689003, 0.973906528517171720077964012084452,
    0.930157491355708226001207180059508, 0.865063366688984510732096688423493,
    0.780817726586416897063717578345042, 0.679409568299024406234327365114874,
    0.562757134668604683339000099272694, 0.433395394129247190799265943165784,
    0.294392862701460198131126603103866, 0.148874338981631210884826001129720,
    0.0]
WGK[:] = [
    0.011694638867371874278064396062192, 0.032558162307964727478818972459390,
    0.054755896574351996031381300244580, 0.075039674810919952767043140916190,
    0.093125454583697605535065465083366, 0.109387158802297641899210590325805,
    0.123491976262065851077600525409078, 0.134709217311473325928054001771707,
    0.142775938577060080797094273138717, 0.147739104901338491374841515972068,
    0.149445554002916905664936468389821]
WG[:] = [
    0.066671344308688137593568809893332, 0.149451349150580593145776339657697,
    0.219086362515982043995534934228163, 0.269266719309996355091226921569469,
    0.295524224714752870173892994651338]


cdef inline double _integrand(int kind, double p0, double p1, double p2, double x) noexcept nogil:
    cdef double u, e, occ
    if kind == 2:
        u = p1 - x
        if u > 30.0:
            return exp(p0 * log(x) + 0.5 * log1p(0.5 * p2 * x) - u - log1p(exp(-u)))
        if u > 0.0:
            e = exp(-u)
            occ = e / (1.0 + e)
        else:
            occ = 1.0 / (exp(u) + 1.0)
        return pow(x, p0) * sqrt(1.0 + 0.5 * p2 * x) * occ
    if kind == 0:
        if x <= 0.0:
            if p0 > 0.0:
                return 0.0
            if p0 < 0.0:
                return INFINITY
            return 1.0 / (exp(-p1) + 1.0)
        u = x - p1
        if u > 30.0:
            return exp(p0 * log(x) + 0.5 * log1p(0.5 * p2 * x) - u - log1p(exp(-u)))
        if u > 0.0:
            e = exp(-u)
            occ = e / (1.0 + e)
        else:
            occ = 1.0 / (exp(u) + 1.0)
        return pow(x, p0) * sqrt(1.0 + 0.5 * p2 * x) * occ
    if x <= 0.0:
        if p0 > 1.0:
            return 0.0
        if p0 == 1.0:
            return 1.0
        return INFINITY
    if x > 30.0:
        return exp((p0 - 1.0) * log(x) - x + p1 * log1p(x / p2))
    return pow(x, p0 - 1.0) * exp(-x) * pow(1.0 + x / p2, p1)


def integrand(int kind, double p0, double p1, double p2, double x):
    return _integrand(kind, p0, p1, p2, x)


cdef inline double _fd_rest(double p1, double p2, double x) noexcept nogil:
    cdef double u = x - p1
    cdef double e, occ
    if u > 30.0:
        return exp(0.5 * log1p(0.5 * p2 * x) - u - log1p(exp(-u)))
    if u > 0.0:
        e = exp(-u)
        occ = e / (1.0 + e)
    else:
        occ = 1.0 / (exp(u) + 1.0)
    return sqrt(1.0 + 0.5 * p2 * x) * occ


cdef inline double _panel_value(int kind, double p0, double p1, double p2, int mode,
                                double origin, double pexp, double t) noexcept nogil:
    cdef double s
    if mode == 0:
        return _integrand(kind, p0, p1, p2, t)
    if mode == 1:
        s = 1.0 / (1.0 - t)
        return _integrand(kind, p0, p1, p2, origin + t * s) * s * s
    # x = t^pexp: fold x^power and the Jacobian into one power of t
    cdef double x = pow(t, pexp)
    if kind == 0:
        return pexp * pow(t, pexp * (p0 + 1.0) - 1.0) * _fd_rest(p1, p2, x)
    return pexp * pow(t, pexp * p0 - 1.0) * exp(-x) * pow(1.0 + x / p2, p1)





cdef void _qk21(int kind, double p0, double p1, double p2, int mode, double origin, double pexp,
                double a, double b, double* result, double* abserr, double* floor) noexcept nogil:
    cdef double centr = 0.5 * (a + b)
    cdef double hlgth = 0.5 * (b - a)
    cdef double dhlgth = fabs(hlgth)
    cdef double fv1[10]
    cdef double fv2[10]
    cdef double resg = 0.0, resk, resabs, resasc, reskh, fc, f1, f2, fsum, absc, err, ratio
    cdef int j, jtw, jtwm1
    fc = _panel_value(kind, p0, p1, p2, mode, origin, pexp, centr)
    resk = WGK[10] * fc
    resabs = fabs(resk)
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
        resabs += WGK[jtw] * (fabs(f1) + fabs(f2))
    for j in range(5):
        jtwm1 = 2 * j
        absc = hlgth * XGK[jtwm1]
        f1 = _panel_value(kind, p0, p1, p2, mode, origin, pexp, centr - absc)
        f2 = _panel_value(kind, p0, p1, p2, mode, origin, pexp, centr + absc)
        fv1[jtwm1] = f1
        fv2[jtwm1] = f2
        fsum = f1 + f2
        resk += WGK[jtwm1] * fsum
        resabs += WGK[jtwm1] * (fabs(f1) + fabs(f2))
    reskh = resk * 0.5
    resasc = WGK[10] * fabs(fc - reskh)
    for j in range(10):
        resasc += WGK[j] * (fabs(fv1[j] - reskh) + fabs(fv2[j] - reskh))
    result[0] = resk * hlgth
    resabs *= dhlgth
    resasc *= dhlgth
    err = fabs((resk - resg) * hlgth)
    if resasc != 0.0 and err != 0.0:
        ratio = 200.0 * err / resasc
        if ratio >= 1.0:
            err = resasc
        else:
            err = resasc * pow(ratio, 1.5)
    floor[0] = 0.0
    if resabs > UFLOW / (50.0 * EPMACH):
        floor[0] = 50.0 * EPMACH * resabs
        if floor[0] > err:
            err = floor[0]
    abserr[0] = err


def integrate(int kind, params, points, double pexp, double epsabs, double epsrel, int limit):
    """Compiled twin of :func:`relfd._pykernels.integrate`."""
    cdef double p0 = float(params[0]), p1 = float(params[1]), p2 = float(params[2])
    cdef int npan = len(points) - 1
    cdef int cap = limit if limit > npan else npan
    cdef double* lo_l = <double*> malloc(cap * sizeof(double))
    cdef double* hi_l = <double*> malloc(cap * sizeof(double))
    cdef int* mode_l = <int*> malloc(cap * sizeof(int))
    cdef double* org_l = <double*> malloc(cap * sizeof(double))
    cdef double* res_l = <double*> malloc(cap * sizeof(double))
    cdef double* err_l = <double*> malloc(cap * sizeof(double))
    cdef double* flr_l = <double*> malloc(cap * sizeof(double))
    cdef int i, n, imax, mode, ier = 0
    cdef long neval
    cdef double negl, a, b, mid, lo, hi, org, e, emax, width, result = 0.0, errsum = 0.0, tolv, m
    if not (lo_l and hi_l and mode_l and org_l and res_l and err_l and flr_l):
        free(lo_l); free(hi_l); free(mode_l); free(org_l); free(res_l); free(err_l); free(flr_l)
        raise MemoryError()
    try:
        for i in range(npan):
            a = float(points[i])
            b = float(points[i + 1])
            if isinf(b):
                mode = 1; org = a; lo = 0.0; hi = 1.0
            elif i == 0 and pexp > 0.0:
                mode = 2; org = 0.0; lo = 0.0; hi = pow(b, 1.0 / pexp)
            else:
                mode = 0; org = 0.0; lo = a; hi = b
            lo_l[i] = lo; hi_l[i] = hi; mode_l[i] = mode; org_l[i] = org
            _qk21(kind, p0, p1, p2, mode, org, pexp, lo, hi, &res_l[i], &err_l[i], &flr_l[i])
        n = npan
        neval = 21 * npan
        with nogil:
            while True:
                result = 0.0
                errsum = 0.0
                for i in range(n):
                    result += res_l[i]
                for i in range(n):
                    errsum += err_l[i]
                tolv = epsrel * fabs(result)
                if epsabs > tolv:
                    tolv = epsabs
                if errsum <= tolv:
                    break
                imax = -1
                emax = -1.0
                negl = 1e-3 * EPMACH * fabs(result)
                for i in range(n):
                    e = err_l[i]
                    if e > emax and e > flr_l[i] * 1.0000001 and e > negl:
                        width = hi_l[i] - lo_l[i]
                        m = fabs(lo_l[i])
                        if fabs(hi_l[i]) > m:
                            m = fabs(hi_l[i])
                        if width > 1e3 * EPMACH * m + UFLOW:
                            imax = i
                            emax = e
                if imax < 0:
                    ier = 2
                    break
                if n >= limit:
                    ier = 1
                    break
                a = lo_l[imax]
                b = hi_l[imax]
                mid = 0.5 * (a + b)
                mode = mode_l[imax]
                org = org_l[imax]
                hi_l[imax] = mid
                _qk21(kind, p0, p1, p2, mode, org, pexp, a, mid, &res_l[imax], &err_l[imax], &flr_l[imax])
                lo_l[n] = mid; hi_l[n] = b; mode_l[n] = mode; org_l[n] = org
                _qk21(kind, p0, p1, p2, mode, org, pexp, mid, b, &res_l[n], &err_l[n], &flr_l[n])
                n += 1
                neval += 42
        return result, errsum, int(neval), ier
    finally:
        free(lo_l); free(hi_l); free(mode_l); free(org_l); free(res_l); free(err_l); free(flr_l)
