import math
import random

import pytest

from conftest import FROZEN, mp_frel
from relfd.core import FdParams
from relfd.errors import ConvergenceError, DomainError, UsageError
from relfd.kernels import KIND_FD, integrate
from relfd.oracle import QuadResult, quad_fd_rel, quad_fd_std, taylor_product_oracle
from relfd.relativistic import fd_rel_neg_eta
from relfd.standard import fhat, fd_std_sommerfeld


def test_closed_forms():
    assert quad_fd_rel(FdParams(0, 0, 0), 1e-13).value == pytest.approx(math.log(2), rel=1e-15)
    assert quad_fd_rel(FdParams(1, 0, 0), 1e-13).value == pytest.approx(math.pi**2 / 12, rel=1e-15)
    assert quad_fd_std(0.0, 1.0).value == pytest.approx(math.log1p(math.e), rel=1e-15)


def test_against_negative_eta_series():
    p = FdParams(0.75, -7, 10.5)
    assert quad_fd_rel(p, 1e-13).value == pytest.approx(fd_rel_neg_eta(p).value, rel=1e-12)


def test_singular_head_and_large_eta():
    assert quad_fd_std(-0.5, 2.0, 1e-12).value == pytest.approx(fhat(-0.5, 2.0) * math.gamma(0.5), rel=1e-10)
    assert quad_fd_std(0.5, 30.0, 1e-12).value == pytest.approx(fd_std_sommerfeld(0.5, 30.0, 8).value, rel=1e-10)


@pytest.mark.parametrize("key", sorted(FROZEN))
def test_frozen_references(key):
    r = quad_fd_rel(FdParams(*key), 1e-14)
    assert r.value == pytest.approx(FROZEN[key], rel=1e-13)
    assert r.abs_err_est <= 1e-12 * abs(r.value)


def test_self_consistency_when_halving_tol():
    rng = random.Random(20240611)
    for _ in range(10):
        p = FdParams(rng.uniform(0, 4), rng.uniform(-20, 60), rng.uniform(0, 200))
        a = quad_fd_rel(p, 1e-10)
        b = quad_fd_rel(p, 5e-11)
        assert abs(a.value - b.value) <= a.abs_err_est


@pytest.mark.parametrize("eta", [-10.0, 0.0, 7.0, 25.0, 50.0])
def test_tail_truncation(eta):
    p = FdParams(1.25, eta, 10.5)
    full = quad_fd_rel(p, 1e-14).value
    knee = max(eta, 1.0)
    cut, _, _, _ = integrate(KIND_FD, (p.q, eta, p.beta), (0.0, 1.0, knee + 1.0, 2 * eta + 80.0) if eta > 0 else (0.0, 1.0, 80.0),
                             4.0, 0.0, 1e-15, 4000)
    assert cut == pytest.approx(full, rel=1e-15)


@pytest.mark.parametrize("eta", [-1.0, -3.0, -8.0, -25.0])
@pytest.mark.parametrize("beta", [0.0, 4 / 3, 10.5, 100.0])
def test_agrees_with_convergent_series(eta, beta):
    p = FdParams(0.75, eta, beta)
    assert quad_fd_rel(p).value == pytest.approx(fd_rel_neg_eta(p).value, rel=1e-12)


def test_mpmath_spot_checks():
    for q, eta, beta in ((0.3, 3.3, 0.7), (3.7, 45.0, 2.0), (0.0, -3.0, 1000.0)):
        assert quad_fd_rel(FdParams(q, eta, beta), 1e-14).value == pytest.approx(mp_frel(q, eta, beta), rel=1e-13)


def test_errors():
    with pytest.raises(DomainError):
        quad_fd_std(-1.0, 0.0)
    with pytest.raises(DomainError):
        quad_fd_rel(FdParams(1, 0, 0), 0.0)
    with pytest.raises(ValueError):
        QuadResult(1.0, -1.0, 3)


def test_taylor_product():
    assert taylor_product_oracle([1], [1, 2, 3], 2) == [1, 2, 3]
    t2, b1, b2 = 1.6449, 0.3, -0.7
    assert taylor_product_oracle([1, 0, t2], [1, b1, b2], 2) == pytest.approx([1, b1, b2 + t2])
    with pytest.raises(UsageError):
        taylor_product_oracle([1], [1], 3)
    with pytest.raises(UsageError):
        taylor_product_oracle([], [1], 0)
    with pytest.raises(UsageError):
        taylor_product_oracle([1], [1], -1)
