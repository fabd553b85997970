import math

import mpmath
import pytest

from turbo_lerch.catalog import load_catalog
from turbo_lerch.core.combinat import Convention
from turbo_lerch.core.errors import CatalogError, PoleError, UnknownFamilyError, ValidityError
from turbo_lerch.core.quad import QuadratureSpec, Side
from turbo_lerch.identities import derived, malmsten, registry, tables, theorems
from turbo_lerch.identities.derived import binom_weight
from turbo_lerch.identities.integrands import build_integrand, side_eta
from turbo_lerch.identities.params import ParamSet, check_validity, parse_params
from turbo_lerch.verify.runner import draw_params, sampler_rng

mpmath.mp.dps = 20


def rel(a, b):
    return abs(complex(a) - complex(b)) / max(abs(complex(b)), 1e-300)


@pytest.fixture(scope="module")
def catalog():
    return load_catalog()


# Master identities


def test_thm2_reduces_to_pi():
    # int_0^inf dx / (sqrt(x) (1 + x)) = pi
    p = ParamSet(n=0, b=1, v=1, m=0.5, k=0, a=1)
    assert rel(theorems.thm2_rhs(p), math.pi) < 1e-12


def test_thm2_beta_integral_fixes_the_stirling_sign():

    p = ParamSet(n=2, v=2, b=1, m=0.5, k=0, a=1)
    beta = math.gamma(0.25) * math.gamma(2.75) / (2 * math.factorial(2))
    assert rel(theorems.thm2_rhs(p, Convention.SIGNED), beta) < 1e-11
    assert rel(theorems.thm2_rhs(p, Convention.UNSIGNED), beta) > 1e-3


def test_thm2_log_power_against_mpmath():

    p = ParamSet(n=1, v=2, b=1, m=0.5, k=1, a=1)
    expected = mpmath.quad(lambda x: x**-0.5 * mpmath.log(x) / (1 + x**2) ** 2, [0, 1, mpmath.inf])
    assert rel(theorems.thm2_rhs(p), expected) < 1e-10


@pytest.mark.parametrize("k", [0, 1, 2])
def test_thm1_against_mpmath(k):

    p = ParamSet(a=1, b=1, c=1, k=k, m=0.5, n=1, v=2)
    expected = mpmath.quad(
        lambda x: x**-0.5 * mpmath.log(x) ** k / ((1 + x**2) * (2 + x**2)), [0, 1, mpmath.inf]
    )
    assert rel(theorems.thm1_rhs(p), expected) < 1e-10


@pytest.mark.parametrize(
    "fn,dk,p",
    [
        (theorems.thm1_rhs, theorems.thm1_rhs_dk, ParamSet(a=1.3, b=1, c=0.8, k=0.6, m=0.5, n=1, v=2)),
        (theorems.thm2_rhs, theorems.thm2_rhs_dk, ParamSet(a=1.3, b=1, k=0.6, m=0.5, n=1, v=2)),
    ],
)
def test_k_derivative_against_central_difference(fn, dk, p):

    h = 1e-4
    fd = (fn(p.replace(k=p.k + h)) - fn(p.replace(k=p.k - h))) / (2 * h)
    assert rel(dk(p), fd) < 1e-5


# Derived examples


@pytest.mark.parametrize("a", [0.5, 1.0, 2.0, math.pi])
def test_diekama_polygamma_form(a):

    w = (a + math.pi) / (2 * math.pi)
    expected = (2 * math.pi * mpmath.psi(1, w) - a * mpmath.psi(2, w)) / (8 * a**3 * math.pi**2)
    assert rel(derived.eq_diekama_rhs(ParamSet(a=a)), expected) < 1e-11


def test_diekama_against_quadrature():

    a = 1.0
    expected = mpmath.quad(lambda x: 1 / ((1 + x) ** 2 * (a**2 + mpmath.log(x) ** 2) ** 2), [0, 1, mpmath.inf])
    assert rel(derived.eq_diekama_rhs(ParamSet(a=a)), expected) < 1e-9


def test_diekama_zeta3_value():

    expected = (math.pi**2 + 6 * float(mpmath.zeta(3))) / (24 * math.pi**4)
    assert derived.eq_diekama_zeta3_rhs(ParamSet()).real == pytest.approx(expected, rel=1e-13)
    assert rel(derived.eq_diekama_rhs(ParamSet(a=math.pi)), expected) < 1e-11


def test_ex4_closed_form():

    expected = 1j * math.pi * math.log(math.pi / math.tanh(math.pi / 2))
    assert rel(derived.ex4_rhs(ParamSet()), expected) < 1e-14


def test_lerch_transformation_sides_agree(catalog):

    p = catalog.get("lerch-transformation").default_params
    lhs = registry.example_second("lerch-transformation", p)
    assert rel(registry.example_rhs("lerch-transformation", p), lhs) < 1e-9


def test_binom_weight():

    assert binom_weight(0, 0) == 1
    assert binom_weight(3, 1) == pytest.approx(-3 / 6)
    assert sum(binom_weight(4, j) for j in range(5)) == pytest.approx(0.0, abs=1e-15)


# Table reproductions


@pytest.mark.parametrize(
    "entry_id,draws",
    [
        ("gr-3.194.4", 10),
        ("gr-3.194.4-series", 10),
        ("gr-4.267.22", 5),
        ("gr-4.267.23-log", 5),
        ("gr-4.267.30", 5),
        ("prudnikov-2.6.4.8", 5),
        ("prudnikov-2.6.4.8-series", 5),
        ("brychkov-6.15", 5),
        ("brychkov-6.15-series", 5),
    ],
)
def test_tables_match_classical_forms(catalog, entry_id, draws):

    entry = catalog.get(entry_id)
    for p in [entry.default_params] + draw_params(entry, sampler_rng(entry_id, 42), draws):
        classical = registry.example_classical(entry_id, p)
        rhs = registry.example_rhs(entry_id, p) * entry.erratum_multiplier
        assert abs(rhs - classical) <= 1e-8 * max(1.0, abs(classical)), p


def test_brychkov_sign_erratum():
    # n = 1, s = 1/2, a = -2 tabulates as -pi/sqrt(2)
    p = ParamSet(n=1, s=0.5, a=-2)
    classical = tables.brychkov_615_classical(p)
    assert rel(classical, -math.pi / math.sqrt(2)) < 1e-12
    assert rel(-tables.brychkov_615_rhs(p), classical) < 1e-10


@pytest.mark.parametrize("alpha", [1.0, 2.0, 3.0])
def test_grobner_odd_branch_at_m1(alpha):
    assert rel(tables.grobner_piecewise_rhs(1, alpha, 0), math.pi / alpha) < 1e-12


def test_grobner_branches_are_continuous():

    for m, n in [(1, 0), (3, 1)]:
        odd = tables.grobner_piecewise_rhs(m, 2.0, n)
        for dm in (1e-6, -1e-6):
            assert rel(tables.grobner_piecewise_rhs(m + dm, 2.0, n), odd) < 1e-4


def test_grobner_series_branch_against_beta():
    # n = 0: int x^(m alpha/2 - 1) / (1 + x^alpha)^m = B(m/2, m/2) / alpha
    m, alpha = 1.5, 2.0
    beta = math.gamma(m / 2) ** 2 / math.gamma(m)
    assert rel(tables.grobner_piecewise_rhs(m, alpha, 0), beta / alpha) < 1e-12


# Parameters


def test_param_set_is_immutable():

    p = ParamSet(a=1, n=2)
    with pytest.raises(AttributeError):
        p.a = 2
    assert p.replace(a=3).a == 3
    assert p.a == 1
    assert p.integer("n") == 2
    with pytest.raises(CatalogError):
        ParamSet(a=1.5).integer("a")


def test_parse_params_accepts_strings_and_objects():

    p = parse_params({"a": "1+2i", "b": {"re": 0.5, "im": -1}, "n": 3})
    assert p.a == 1 + 2j
    assert p.b == 0.5 - 1j
    assert p.integer("n") == 3
    with pytest.raises(CatalogError):
        parse_params({"a": "one"})


def test_validity_error_names_the_condition():

    with pytest.raises(ValidityError) as info:
        check_validity(ParamSet(m=-1, v=2), ["re_m_pos"])
    assert info.value.condition == "Re(m) > 0"
    with pytest.raises(CatalogError):
        check_validity(ParamSet(m=1), ["no-such-tag"])


# Registry and integrands


def test_registry_lookups():

    assert "thm1" in registry.known_ids()
    with pytest.raises(UnknownFamilyError):
        registry.evaluator("no-such-entry")
    with pytest.raises(CatalogError):
        registry.example_second("thm1", ParamSet())
    with pytest.raises(CatalogError):
        registry.lhs_integrand("lerch-transformation", ParamSet())
    with pytest.raises(CatalogError):
        registry.example_classical("thm1", ParamSet())


def test_unknown_integrand_family():
    with pytest.raises(UnknownFamilyError):
        build_integrand("no-such-family", ParamSet())


def test_side_eta_signs():

    assert side_eta(Side.NONE) == 0.0
    assert side_eta(Side.ABOVE) > 0 > side_eta(Side.BELOW)


def test_poles_are_located_and_guarded():

    spec = registry.lhs_integrand("poly-ex2-case1", ParamSet(), Side.BELOW)
    poles = sorted(s.location for s in spec.singularities if s.kind == "pole")
    assert poles == pytest.approx([1.0, 2.0])
    with pytest.raises(PoleError):
        spec.evaluate(1.0)
    assert len(spec.quadrature_spec(QuadratureSpec()).pv_poles) == 2


def test_malm_poch1_sqrt_has_a_branch_point_where_the_numerator_vanishes(catalog):

    spec = registry.lhs_integrand("malm-poch1-sqrt", catalog.get("malm-poch1-sqrt").default_params, Side.BELOW)
    kinds = {s.location: s.kind for s in spec.singularities}
    assert kinds[1.0] == "branch"
    assert kinds[2.0] == "pole"
    assert [p.location for p in spec.quadrature_spec(QuadratureSpec()).pv_poles] == [2.0]


def test_power_family_at_one():
    # 2^-(n+1) log^k(a) at x = 1 with b = 1
    spec = build_integrand("power-logk", ParamSet(a=2, b=1, k=1, m=0.5, n=1, v=2))
    assert rel(spec.evaluate(1.0), 0.25 * math.log(2.0)) < 1e-15


def test_diekama_family_at_one():

    a = 1.5
    spec = build_integrand("diekama", ParamSet(a=a))
    assert rel(spec.evaluate(1.0), 1 / (4 * a**4)) < 1e-15


# Branch-sensitive closed forms


def test_kolbig_at_defaults(catalog):

    value = registry.example_rhs("kolbig", catalog.get("kolbig").default_params)
    assert rel(value, -math.pi**2 - 1j * math.pi * math.log(2.0)) < 1e-9


@pytest.mark.parametrize(
    "entry_id,expected",
    [("poly-ex2-case1", 0.48247 - 0.06327j), ("poly-ex2-case2", 0.09769 + 0.01693j)],
)
def test_half_pair_cases_below_the_poles(catalog, entry_id, expected):

    value = registry.example_rhs(entry_id, catalog.get(entry_id).default_params)
    assert abs(value - expected) < 5e-5


def test_poly_ex2_case2_reduces_to_case1():

    case1 = tables.poly_ex2_case1_rhs(ParamSet())
    assert rel(tables.poly_ex2_case2_rhs(ParamSet(n=1)), case1) < 1e-12


def test_malm1_diff_against_mpmath(catalog):

    p = catalog.get("malm1-diff").default_params
    s, m = 0.25, 0.5
    expected = mpmath.quad(
        lambda x: (x ** (s - 1) - x ** (m - 1)) * mpmath.log(mpmath.log(x)) / (1 - x), [0, 1, mpmath.inf]
    )
    assert rel(registry.example_rhs("malm1-diff", p), expected) < 1e-6
    assert abs(registry.example_rhs("malm1-diff", p) - (3.313400 + 7.112388j)) < 2e-6


# Difference forms


def test_malm_poch1_is_a_difference_of_malm_poch():

    p = ParamSet(b=1, c=1, m=0.5, n=1, s=0.25, v=2)
    parent = malmsten.malm_poch_rhs
    difference = parent(p.replace(m=p.s + 1)) - parent(p.replace(m=p.m + 1))
    assert abs(malmsten.malm_poch1_rhs(p) - difference) < 1e-9 * max(1.0, abs(difference))


def test_malm_la1_is_a_difference_of_malm_la():

    p = ParamSet(a=1, b=1, m=0.25, n=1, s=0.5, v=2)
    difference = malmsten.malm_la_rhs(p.replace(m=p.s)) - malmsten.malm_la_rhs(p)
    assert abs(malmsten.malm_la1_rhs(p) - difference) < 1e-9 * max(1.0, abs(difference))


def test_poly_ex2_is_a_difference_of_poly_ex1():

    p = ParamSet(b=1, c=1, k=1, m=0.5, n=1, s=0.25, v=2)
    difference = tables.poly_ex1_rhs(p.replace(m=p.s + 1)) - tables.poly_ex1_rhs(p.replace(m=p.m + 1))
    assert abs(tables.poly_ex2_rhs(p) - difference) < 1e-9 * max(1.0, abs(difference))


def test_poch_loginv_1_is_additive_in_its_exponents():

    p = ParamSet(b=1, c=1, m=0.5, n=1, s=0.25, v=2)
    split = tables.poch_loginv_1_rhs(p.replace(s=0.8)) + tables.poch_loginv_1_rhs(p.replace(m=0.8))
    assert abs(tables.poch_loginv_1_rhs(p) - split) < 1e-9 * max(1.0, abs(split))


# k-derivative cross-checks


@pytest.mark.parametrize("entry_id", ["malm-poch", "malm1", "malm-la"])
def test_loglog_forms_match_the_theorem_k_derivatives(catalog, entry_id):

    p = catalog.get(entry_id).default_params
    cross = registry.example_cross_check(entry_id, p)
    assert cross is not None
    assert rel(registry.example_rhs(entry_id, p), cross) < 1e-9


def test_entries_without_cross_check():
    assert registry.example_cross_check("thm1", ParamSet()) is None
