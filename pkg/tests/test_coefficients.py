import math
import threading

import mpmath as mp
import pytest
from hypothesis import given, settings, strategies as st

from relfd.coefficients import (CoefficientCache, a_coeffs, a_m_constant, cd_coeffs,
                                m_series_coeffs, pqr_family, tilde_pq)
from relfd.errors import DomainError
from relfd.oracle import taylor_product_oracle
from relfd.special import pochhammer, tau, tau_table

QS = [0.25, 1.2, 2.4]
BETAS = [4 / 3, 10.5, 50.0]


def closed_a(q, beta):
    t2 = tau(2)
    a1 = 2 / (beta * (1 + 2 * q))
    a2 = (t2 * beta**2 * (4 * q * q - 1) - 2) / (beta**2 * (4 * q * q - 1))
    a3 = 2 * (beta**2 * t2 * (2 * q - 1) * (2 * q - 3) + 2) / (beta**3 * (4 * q * q - 1) * (2 * q - 3))
    return [1.0, a1, a2, a3]


def test_a_leading():
    assert a_coeffs(0.25, 4 / 3, 0) == [1.0]
    assert a_coeffs(0.25, 4 / 3, 1)[1] == pytest.approx(1.0, rel=1e-15)


@pytest.mark.parametrize("q", QS)
@pytest.mark.parametrize("beta", BETAS)
def test_a_closed_forms(q, beta):
    got = a_coeffs(q, beta, 3)
    for g, e in zip(got, closed_a(q, beta)):
        assert g == pytest.approx(e, rel=1e-13)


@pytest.mark.parametrize("q", QS)
@pytest.mark.parametrize("beta", BETAS)
def test_a_polynomial_oracle(q, beta):
    taus = list(tau_table(8))
    ms = [1.0]
    for k in range(8):  # independent Pochhammer route for the M Taylor coefficients
        ms.append(pochhammer(-0.5, k + 1) / pochhammer(-q - 0.5, k + 1) * (2 / beta) ** (k + 1) / math.factorial(k + 1))
    oracle = taylor_product_oracle(taus, ms, 8)
    for g, e in zip(a_coeffs(q, beta, 8), oracle):
        assert g == pytest.approx(e, rel=1e-12, abs=1e-300)


def test_a_rejects_half_integer():
    with pytest.raises(DomainError):
        a_coeffs(1.5, 2.0, 3)


def test_pqr_basics():
    A, P, Q, R, p, qq = pqr_family(2, 4 / 3, 3)
    assert P[0] == 1.0 and p[0] == 1.0
    assert A == pytest.approx(1 / (4 * math.sqrt(math.pi)), rel=1e-15)
    assert a_m_constant(2) == A
    for m in range(2, 7):
        assert len(pqr_family(m, 10.5, 0)[3]) == m


def test_q_family_independent_digamma():
    m, beta = 3, 10.5
    _, P, Q, _, _, _ = pqr_family(m, beta, 2)
    with mp.workdps(40):
        psi = lambda x: mp.diff(mp.loggamma, x)
        for k in range(3):
            br = mp.log(2 / mp.mpf(beta)) + psi(m - 0.5 + k) - psi(1 + k) - psi(m + k + 1)
            assert Q[k] == pytest.approx(float(P[k] * br), rel=1e-14)


@pytest.mark.parametrize("m", [2, 3, 5])
def test_tau_corrections(m):
    _, P, Q, _, p, qq = pqr_family(m, 4 / 3, 4)
    assert p[0] == P[0]
    assert p[1] == P[1]
    assert p[2] == pytest.approx(P[2] + tau(2) * P[0], rel=1e-15)
    assert qq[2] == pytest.approx(Q[2] + tau(2) * Q[0], rel=1e-15)


def test_r_family_values():
    m, beta = 4, 10.5
    R = pqr_family(m, beta, 0)[3]
    g = math.gamma(m - 0.5)
    for k in range(1, m + 1):
        expected = (2 / beta) ** (-k) * math.factorial(k - 1) * float(mp.rf(1.5 - m + k, m - k)) / (g * math.factorial(m - k))
        assert R[k - 1] == pytest.approx(expected, rel=1e-14)


def test_cd_values():
    assert cd_coeffs(1.7, 0) == ([1.0], [1.0])
    c, d = cd_coeffs(1.2, 1)
    assert d[1] == pytest.approx(10 / 17, rel=1e-15)
    c, d = cd_coeffs(2.4, 2)
    assert c[2] == pytest.approx(4 * pochhammer(3.4, 2) / (2 * pochhammer(4.9, 2)), rel=1e-14)
    assert c[2] == pytest.approx(4 * 3.4 * 4.4 / (2 * 4.9 * 5.9), rel=1e-14)


def test_tilde_values():
    Pt, Qt = tilde_pq(2, 7.0, 0)
    assert Pt == [1.0]
    Pt, Qt = tilde_pq(2, 2.0, 0)
    assert Qt[0] == pytest.approx(0.5 - 2 * math.log(2) + 0.5772156649015329, rel=1e-14)


def test_tilde_scaling_identity():
    m, beta = 3, 50.0
    Pt, Qt = tilde_pq(m, beta, 4)
    _, P, Q, _, _, _ = pqr_family(m, beta, 4)
    for k in range(5):
        assert Pt[k] == pytest.approx(beta**k * P[k], rel=1e-13)
        assert Qt[k] == pytest.approx(beta**k * Q[k], rel=1e-13)


@settings(max_examples=25, deadline=None)
@given(st.floats(0.05, 6.0).filter(lambda q: abs((q + 1.5) - round(q + 1.5)) > 1e-3),
       st.floats(0.2, 300.0))
def test_m_series_matches_mpmath(q, beta):
    got = m_series_coeffs(q, beta, 6)
    with mp.workdps(30):
        for k, g in enumerate(got):
            e = mp.rf(-0.5, k) / mp.rf(-q - 0.5, k) * (2 / mp.mpf(beta)) ** k / mp.factorial(k)
            assert g == pytest.approx(float(e), rel=1e-12)


def test_cache_determinism_and_identity():
    cache = CoefficientCache()
    a = cache.generic(0.25, 4 / 3, 8)
    b = CoefficientCache().generic(0.25, 4 / 3, 8)
    assert a == b
    assert cache.generic(0.25, 4 / 3, 8) is a
    h = cache.half_integer(3, 10.5, 6)
    assert h.R and h.p_cauchy[0] == 1.0 and h.c == ()
    assert len(cache) == 2


def test_cache_concurrent_build():
    cache = CoefficientCache()
    out = []
    barrier = threading.Barrier(8)

    def work():
        barrier.wait()
        out.append(cache.half_integer(5, 20.0, 16))

    threads = [threading.Thread(target=work) for _ in range(8)]
    for t in threads:
        t.start()
    for t in threads:
        t.join()
    assert len(out) == 8 and all(o is out[0] for o in out)
    assert len(cache) == 1


def test_cache_limits():
    with pytest.raises(DomainError):
        CoefficientCache().generic(0.25, 1.0, 65)
    with pytest.raises(DomainError):
        pqr_family(1, 1.0, 2)
