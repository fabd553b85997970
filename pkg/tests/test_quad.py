import io
import math

import pytest

from turbo_lerch.core.errors import NonConvergenceError, PoleOrderError
from turbo_lerch.core.quad import (
    PvPole,
    QuadratureSpec,
    Side,
    integrate_pv,
    integrate_semi_infinite,
    refine_until,
)
from turbo_lerch.utils.log import setup_logging


@pytest.mark.parametrize("rule", ["de", "gk"])
def test_rational_and_exponential(rule):

    spec = QuadratureSpec(rule=rule)
    assert integrate_semi_infinite(lambda x: 1.0 / (1.0 + x * x), spec).value == pytest.approx(math.pi / 2, rel=1e-10)
    assert integrate_semi_infinite(lambda x: math.exp(-x), spec).value == pytest.approx(1.0, rel=1e-10)


def test_endpoint_singularity():
    # x^(-1/2)/(1+x) integrates to pi
    outcome = integrate_semi_infinite(lambda x: x**-0.5 / (1.0 + x))
    assert outcome.value == pytest.approx(math.pi, rel=1e-9)
    assert outcome.converged
    assert outcome.evaluations > 0


def test_log_weight():
    # int_0^inf log(x)^2/(1+x^2) = pi^3/8
    value = integrate_semi_infinite(lambda x: math.log(x) ** 2 / (1.0 + x * x)).value
    assert value == pytest.approx(math.pi**3 / 8, rel=1e-9)


def test_finite_domain():

    spec = QuadratureSpec(lower=0.0, upper=2.0, split_points=(0.5,))
    assert integrate_semi_infinite(lambda x: x * x, spec).value == pytest.approx(8.0 / 3.0, rel=1e-12)


def _simple_pole(x):
    return 1.0 / ((1.0 - x) * (1.0 + x * x))


def test_principal_value_simple_pole():

    value = integrate_pv(_simple_pole, PvPole(1.0)).value
    assert value.real == pytest.approx(math.pi / 4, rel=1e-8)
    assert abs(value.imag) < 1e-12


@pytest.mark.parametrize("side,sign", [(Side.BELOW, -1.0), (Side.ABOVE, 1.0)])
def test_deformation_adds_half_residue(side, sign):
    # residue of the integrand at x = 1 is -1/2
    value = integrate_pv(_simple_pole, PvPole(1.0, 1, side)).value
    assert value.real == pytest.approx(math.pi / 4, rel=1e-8)
    assert value.imag == pytest.approx(sign * math.pi / 2, rel=1e-7)


def test_double_pole_finite_part():
    # finite part of int_0^inf dx/((x-1)^2 (x+1)) is -1/2
    value = integrate_pv(lambda x: 1.0 / ((x - 1.0) ** 2 * (x + 1.0)), PvPole(1.0, 2)).value
    assert value.real == pytest.approx(-0.5, abs=1e-7)


def test_pole_order_above_two():

    with pytest.raises(PoleOrderError):
        integrate_pv(lambda x: 1.0 / (x - 1.0) ** 3, PvPole(1.0, 3))


def test_spec_validation():

    with pytest.raises(ValueError):
        QuadratureSpec(rel_tol=0.0)
    with pytest.raises(ValueError):
        QuadratureSpec(split_points=(2.0, 1.0))
    with pytest.raises(ValueError):
        QuadratureSpec(rule="simpson")
    with pytest.raises(ValueError):
        PvPole(-1.0)


def test_with_pole_is_idempotent():

    spec = QuadratureSpec().with_pole(PvPole(2.0))
    assert spec.with_pole(PvPole(2.0)) is spec
    assert len(spec.pv_poles) == 1


def test_budget_exhaustion_reports_partial():

    spec = QuadratureSpec(rel_tol=1e-300, abs_tol=1e-300)
    with pytest.raises(NonConvergenceError) as info:
        refine_until(lambda x: 1.0 / (1.0 + x * x), spec, budget=2)
    assert info.value.partial.value.real == pytest.approx(math.pi / 2, rel=1e-2)
    assert info.value.diagnostics["evaluations"] > 0


def test_refine_until_needs_a_round():
    with pytest.raises(ValueError):
        refine_until(math.exp, QuadratureSpec(), budget=0)


def test_linearity():

    def f(x):
        return math.exp(-x) * math.cos(x)

    def g(x):
        return 1.0 / (1.0 + x) ** 3

    combined = integrate_semi_infinite(lambda x: 2.0 * f(x) - 3j * g(x)).value
    separate = 2.0 * integrate_semi_infinite(f).value - 3j * integrate_semi_infinite(g).value
    assert abs(combined - separate) < 1e-10


@pytest.mark.parametrize("rule", ["de", "gk"])
def test_inversion_symmetry(rule):

    spec = QuadratureSpec(rule=rule)

    def f(x):
        return x**0.3 / (1.0 + x) ** 2.5

    direct = integrate_semi_infinite(f, spec).value
    inverted = integrate_semi_infinite(lambda x: f(1.0 / x) / (x * x), spec).value
    assert abs(direct - inverted) < 1e-9 * abs(direct)


KNOWN = [
    (lambda x: 1.0 / (1.0 + x * x), math.pi / 2),
    (lambda x: math.exp(-x), 1.0),
    (lambda x: x * math.exp(-x), 1.0),
    (lambda x: math.exp(-x * x), math.sqrt(math.pi) / 2),
    (lambda x: x**-0.5 / (1.0 + x), math.pi),
    (lambda x: 1.0 / (1.0 + x) ** 2, 1.0),
    (lambda x: math.log(x) ** 2 / (1.0 + x * x), math.pi**3 / 8),
    (lambda x: 1.0 / ((1.0 + x) * math.sqrt(x)), math.pi),
    (lambda x: x / (1.0 + x**4), math.pi / 4),
    (lambda x: 1.0 / (1.0 + x**3), 2 * math.pi / (3 * math.sqrt(3))),
]


@pytest.mark.parametrize("rule", ["de", "gk"])
def test_error_estimate_is_honest(rule):

    spec = QuadratureSpec(rule=rule, rel_tol=1e-8)
    honest = 0
    for f, exact in KNOWN:
        outcome = integrate_semi_infinite(f, spec)
        honest += abs(outcome.value - exact) <= 10 * outcome.error_estimate + 1e-15 * abs(exact)
    assert honest >= 0.9 * len(KNOWN)


def test_pv_matches_shrinking_excision():
    # symmetric excision of [1 - eps, 1 + eps] drops about 2 eps h(1), h(1) = 1/2 here
    pv = integrate_pv(_simple_pole, PvPole(1.0)).value.real
    for eps in (1e-2, 1e-3, 1e-4):
        left = integrate_semi_infinite(_simple_pole, QuadratureSpec(lower=0.0, upper=1.0 - eps)).value.real
        right = integrate_semi_infinite(_simple_pole, QuadratureSpec(lower=1.0 + eps)).value.real
        assert abs(left + right - pv) < 2 * eps


def test_double_pole_finite_part_converges_tightly():
    # finite part of int_0^inf x^(a-1) / (x - c)^2 dx = -pi (a-1) c^(a-2) cot(pi a)
    a, c = 1.0 / 3.0, 2.0
    exact = -math.pi * (a - 1.0) * c ** (a - 2.0) / math.tan(math.pi * a)
    outcome = integrate_pv(lambda x: x ** (a - 1.0) / (x - c) ** 2, PvPole(c, 2))
    assert outcome.converged
    assert abs(outcome.value - exact) < 1e-9 * abs(exact)


def test_double_pole_with_complex_weight():

    def f(x):
        return (1.0 + 2j) / ((x - 1.0) ** 2 * (x + 1.0))

    outcome = integrate_pv(f, PvPole(1.0, 2))
    assert abs(outcome.value - (-0.5 - 1j)) < 1e-9


def test_pole_window_debug_line_is_formatted():

    stream = io.StringIO()
    setup_logging(2, stream=stream, use_color=False)
    try:
        integrate_pv(_simple_pole, PvPole(1.0))
    finally:
        setup_logging(0, stream=io.StringIO(), use_color=False)
    text = stream.getvalue()
    assert "turbo_lerch.core.quad: pole 1 order 1 side none" in text
    assert "%" not in text
