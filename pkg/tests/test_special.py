import cmath
import math

import mpmath
import numpy as np
import pytest

from turbo_lerch.core import special
from turbo_lerch.core.errors import DomainError, NonFiniteError, PoleError

mpmath.mp.dps = 30


def rel(a, b):
    return abs(complex(a) - complex(b)) / max(abs(complex(b)), 1e-300)


@pytest.mark.parametrize("z", [0.5, 1.0, 3.7, 10.25, 0.3 + 2j, -2.5 + 0.5j, -0.5, 4 - 3j])
def test_gamma_matches_mpmath(z):
    assert rel(special.gamma(z), mpmath.gamma(z)) < 1e-12


@pytest.mark.parametrize("z", [0, -1, -7])
def test_gamma_poles(z):
    with pytest.raises(PoleError) as info:
        special.gamma(z)
    assert info.value.location == z


@pytest.mark.parametrize("n", [0, 1, 2, 3])
@pytest.mark.parametrize("z", [0.25, 1.0, 2.5 + 1j, 17.0, -1.5 + 0.2j])
def test_polygamma_matches_mpmath(n, z):
    assert rel(special.digamma_n(n, z), mpmath.psi(n, z)) < 1e-11


def test_polygamma_rejects_negative_order():
    with pytest.raises(DomainError):
        special.digamma_n(-1, 1.0)


@pytest.mark.parametrize("s,a", [(2, 1), (3, 1), (2.5, 0.3), (1.5 + 2j, 1.7), (3, -0.5), (-1.5, 2.0)])
def test_hurwitz_zeta_matches_mpmath(s, a):
    assert rel(special.hurwitz_zeta(s, a), mpmath.zeta(s, a)) < 1e-11


def test_hurwitz_zeta_pole_and_domain():

    with pytest.raises(PoleError):
        special.hurwitz_zeta(1, 0.5)
    with pytest.raises(DomainError):
        special.hurwitz_zeta(2, -3)


def test_constants():

    assert special.zeta3() == pytest.approx(float(mpmath.zeta(3)), rel=1e-15)
    assert special.catalan_constant() == pytest.approx(float(mpmath.catalan), rel=1e-15)


@pytest.mark.parametrize("s,z", [(2, 0.5), (3, -0.7), (1.5, 0.2 + 0.6j), (2, -1)])
def test_polylog_matches_mpmath(s, z):
    assert rel(special.polylog(s, z), mpmath.polylog(s, z)) < 1e-9


def test_polylog_negative_order_is_rational():
    # Li_{-1}(z) = z/(1-z)^2
    z = 0.5
    assert special.polylog(-1, z) == pytest.approx(z / (1 - z) ** 2)


def test_polylog_at_one():

    assert special.polylog(2, 1) == pytest.approx(math.pi**2 / 6, rel=1e-12)
    with pytest.raises(DomainError):
        special.polylog(1, 1)


def test_principal_branch():

    assert special.clog(-1) == pytest.approx(1j * math.pi)
    # negative zero imaginary part still lands on +i pi
    assert special.clog(complex(-2.0, -0.0)).imag == pytest.approx(math.pi)
    assert special.clog(1j) == pytest.approx(0.5j * math.pi)
    with pytest.raises(DomainError):
        special.clog(0)


def test_cpow_conventions():

    assert special.cpow(0, 0) == 1
    assert special.cpow(0, 2.5) == 0
    with pytest.raises(DomainError):
        special.cpow(0, -1)
    assert special.cpow(-1, 0.5) == pytest.approx(1j)
    assert special.cpow(2 + 1j, 3) == (2 + 1j) ** 3
    assert special.cpow(-8, 1 / 3) == pytest.approx(cmath.exp(cmath.log(-8) / 3))


def test_ensure_finite():

    assert special.ensure_finite(3) == 3 + 0j
    with pytest.raises(NonFiniteError):
        special.ensure_finite(float("nan"))
    with pytest.raises(NonFiniteError):
        special.cexp(1000)


def test_kahan_sum_keeps_small_terms():

    acc = special.KahanSum(1.0)
    for _ in range(10_000):
        acc.add(1e-16)
    assert acc.value.real == pytest.approx(1.0 + 1e-12, rel=1e-15)


def test_gamma_reflection_on_random_points():

    rng = np.random.default_rng(5)
    for re, im in zip(rng.uniform(-4.5, 4.5, 200), rng.uniform(-2.0, 2.0, 200)):
        z = complex(re, im)
        product = special.gamma(z) * special.gamma(1 - z) * cmath.sin(math.pi * z) / math.pi
        assert abs(product - 1) < 1e-11, z


@pytest.mark.parametrize("s", [2, 2.5, 3 + 1j, 1.5 - 0.5j])
@pytest.mark.parametrize("a", [0.3, 1.0, 2.5])
def test_hurwitz_zeta_recurrence(s, a):

    difference = special.hurwitz_zeta(s, a) - special.hurwitz_zeta(s, a + 1)
    assert abs(difference - special.cpow(a, -s)) < 1e-11 * max(1.0, abs(special.cpow(a, -s)))


@pytest.mark.parametrize("n", [0, 1, 2])
@pytest.mark.parametrize("z", [1.5, 2.5 + 1j, 4.0])
def test_polygamma_is_the_derivative_of_the_previous_order(n, z):

    h = 1e-4
    slope = (special.digamma_n(n, z + h) - special.digamma_n(n, z - h)) / (2 * h)
    assert rel(special.digamma_n(n + 1, z), slope) < 1e-6
