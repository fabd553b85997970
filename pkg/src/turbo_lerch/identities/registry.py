"""
Maps every catalog id to its right-hand side, its left-hand side integrand
family (with the parameter substitution that produces it) and, where one
exists, an independent second evaluator or the classical table value.
"""

from dataclasses import dataclass
from typing import Callable, Dict, List, Optional

from turbo_lerch.core.combinat import Convention
from turbo_lerch.core.errors import CatalogError, UnknownFamilyError
from turbo_lerch.core.quad import Side
from turbo_lerch.core.special import cpow
from turbo_lerch.identities import derived, malmsten, tables, theorems
from turbo_lerch.identities.integrands import IntegrandSpec, build_integrand
from turbo_lerch.identities.params import ParamSet

RhsFn = Callable[[ParamSet, Optional[Convention]], complex]
Adapter = Callable[[ParamSet], ParamSet]


def _same(p: ParamSet) -> ParamSet:
    return p


def _fixed(**values) -> Adapter:
    """Adapter that pins the given family parameters."""

    return lambda p: p.replace(**values)


@dataclass(frozen=True)
class Evaluator:
    """
    rhs: the closed form being verified.
    family/adapter: the integrand the left side is computed from; None for
        series-kind entries, whose left side is `second`.
    classical: the table value, when the entry reproduces a known table.
    cross: the same closed form reached another way (a k-derivative of a
        master identity), compared against `rhs` before any quadrature.
    """

    rhs: RhsFn
    family: Optional[str] = None
    adapter: Adapter = _same
    second: Optional[RhsFn] = None
    classical: Optional[RhsFn] = None
    cross: Optional[RhsFn] = None

    @property
    def kind(self) -> str:
        return "integral" if self.family else "series"


def _pinned(rhs: RhsFn, **values) -> RhsFn:
    """`rhs` evaluated with the given parameters pinned."""

    return lambda p, convention=None: rhs(p.replace(**values), convention)


def _poly_arg(p: ParamSet) -> ParamSet:
    return p.replace(a=cpow(-p.b / p.c, -1.0 / p.v))


def _half_pair(**values) -> Adapter:
    """(1/sqrt(x) - sqrt(x)) numerators over a unit-step Pochhammer."""

    return _fixed(m=0.5, s=-0.5, b=1.0, v=1.0, **values)


EVALUATORS: Dict[str, Evaluator] = {
    # master identities
    "thm1": Evaluator(theorems.thm1_rhs, "pochhammer-logk"),
    "thm2": Evaluator(theorems.thm2_rhs, "power-logk"),
    # derived examples
    "eq1": Evaluator(derived.eq1_rhs, "log-sq-pochhammer"),
    "eq2": Evaluator(derived.eq2_rhs, "log-sq-half"),
    "ex3-a-epi-n1": Evaluator(derived.ex3_rhs, "log-sq-rational"),
    "ex4-a-epi-n0": Evaluator(derived.ex4_rhs, "log-sq-rational"),
    "eq2-da": Evaluator(derived.eq2_da_rhs, "inv-log-sq-half"),
    "malm-general": Evaluator(derived.malm_general_rhs, "pochhammer-loglog", _fixed(a=1.0, k=0.0)),
    "malm-b-neg1": Evaluator(derived.malm_b_neg1_rhs, "loglog-double-pole"),
    "kolbig": Evaluator(derived.kolbig_rhs, "power-logk", _fixed(b=-1.0, v=1.0)),
    "lerch-transformation": Evaluator(derived.lerch_transformation_rhs, second=derived.lerch_transformation_lhs),
    "eq-log-a": Evaluator(derived.eq_log_a_rhs, "inv-log-sq-scaled"),
    "eq-log-a-da": Evaluator(derived.eq_log_a_da_rhs, "inv-log-sq-scaled-sq"),
    "eq-diekama": Evaluator(derived.eq_diekama_rhs, "diekama"),
    "eq-diekama-zeta3": Evaluator(derived.eq_diekama_zeta3_rhs, "diekama"),
    "exercise-psi": Evaluator(derived.exercise_psi_rhs, "exercise", _fixed(k=0.0)),
    "exercise-zeta3": Evaluator(derived.exercise_zeta3_rhs, "exercise", _fixed(k=1.0)),
    # Malmsten family
    "malm-poch": Evaluator(
        malmsten.malm_poch_rhs,
        "pochhammer-loglog",
        _fixed(a=1.0, k=0.0),
        cross=_pinned(theorems.thm1_rhs_dk, a=1.0, k=0.0),
    ),
    "malm-poch1": Evaluator(malmsten.malm_poch1_rhs, "pochhammer-loglog-diff", _fixed(a=1.0, k=0.0)),
    "malm-poch1-sqrt": Evaluator(
        malmsten.malm_poch1_sqrt_rhs, "pochhammer-loglog-diff", _half_pair(c=-1.0, a=1.0, k=0.0)
    ),
    "malm1": Evaluator(malmsten.malm1_rhs, "power-loglog", _fixed(k=0.0), cross=_pinned(theorems.thm2_rhs_dk, k=0.0)),
    "malm1-diff": Evaluator(malmsten.malm1_diff_rhs, "power-loglog-diff", _fixed(b=-1.0, v=1.0, a=1.0, k=0.0)),
    "malm-la": Evaluator(
        malmsten.malm_la_rhs, "power-loglog", _fixed(k=-1.0), cross=_pinned(theorems.thm2_rhs_dk, k=-1.0)
    ),
    "malm-la1": Evaluator(malmsten.malm_la1_rhs, "power-loglog-diff", _fixed(k=-1.0)),
    "malm-la1-ab1": Evaluator(malmsten.malm_la1_rhs, "power-loglog-diff", _fixed(a=1.0, b=1.0, k=-1.0)),
    "malm1-ex": Evaluator(
        malmsten.malm1_ex_rhs,
        "power-loglog",
        lambda p: p.replace(n=p.integer("n") - 1, m=1.0, v=3.0, b=1.0, a=1.0, k=0.0),
    ),
    "malm1-ex-n3": Evaluator(
        malmsten.malm1_ex_n3_rhs, "power-loglog", _fixed(n=0, m=1.0, v=3.0, b=1.0, a=1.0, k=0.0)
    ),
    "malm1-v4": Evaluator(malmsten.malm1_v4_rhs, "power-loglog", _fixed(n=1, m=1.0, v=4.0, b=1.0, a=1.0, k=0.0)),
    "malm1-v2-n3-catalan": Evaluator(
        malmsten.malm1_v2_n3_catalan_rhs, "power-loglog", _fixed(n=3, m=1.0, v=2.0, b=1.0, a=1.0, k=0.0)
    ),
    "malm1-catalan-v3": Evaluator(
        malmsten.malm1_catalan_v3_rhs, "power-loglog", _fixed(n=2, m=1.5, v=3.0, b=8.0, a=2.0, k=0.0)
    ),
    # table reproductions
    "brychkov-6.15": Evaluator(
        tables.brychkov_615_rhs, "shifted-power", classical=tables.brychkov_615_classical
    ),
    "brychkov-6.15-series": Evaluator(
        tables.brychkov_615_series,
        second=tables.brychkov_615_series_classical,
        classical=tables.brychkov_615_series_classical,
    ),
    "prudnikov-2.6.4.8": Evaluator(tables.prudnikov_rhs, "prudnikov", classical=tables.prudnikov_classical),
    "prudnikov-2.6.4.8-series": Evaluator(
        tables.prudnikov_series,
        second=tables.prudnikov_series_classical,
        classical=tables.prudnikov_series_classical,
    ),
    "gr-3.194.4": Evaluator(
        tables.gr_3194_4_rhs,
        "power-logk",
        lambda p: p.replace(m=p.a, v=1.0, k=0.0, a=1.0),
        classical=tables.gr_3194_4_classical,
    ),
    "gr-3.194.4-series": Evaluator(
        tables.gr_3194_4_series,
        second=tables.gr_3194_4_series_classical,
        classical=tables.gr_3194_4_series_classical,
    ),
    "gr-4.267.22": Evaluator(tables.gr_4267_22_rhs, "gr-4.267.22", classical=tables.gr_4267_22_classical),
    "gr-4.267.23": Evaluator(tables.gr_4267_23_rhs, "gr-4.267.23"),
    "gr-4.267.23-log": Evaluator(tables.gr_4267_23_log_rhs, "gr-4.267.23-log", classical=tables.gr_4267_23_log_li),
    "gr-4.267.30-li": Evaluator(
        tables.gr_4267_30_li_rhs,
        "power-logk",
        lambda p: p.replace(m=p.m + 1.0, b=-1.0, v=p.p + p.q + 2.0 * p.s, n=0, a=1.0),
    ),
    "gr-4.267.30": Evaluator(tables.gr_4267_30_rhs, "gr-4.267.30", classical=tables.gr_4267_30_li_sum),
    "grobner-general": Evaluator(tables.grobner_general_rhs, "power-logk", _fixed(b=-1.0, a=1.0)),
    "grobner-general-log": Evaluator(tables.grobner_general_log_rhs, "grobner-log"),
    "thm2-loglog-k-neg1": Evaluator(tables.thm2_loglog_k_neg1_rhs, "pochhammer-loglog", _fixed(a=1.0, k=-1.0)),
    "poch-loginv-1": Evaluator(tables.poch_loginv_1_rhs, "pochhammer-logk-diff", _fixed(a=1.0, k=-1.0)),
    "poch-loginv-1-cneg": Evaluator(
        tables.poch_loginv_1_cneg_rhs, "pochhammer-logk-diff", _fixed(a=1.0, k=-1.0, c=-1.0)
    ),
    "poch-loginv-4term": Evaluator(tables.poch_loginv_4term_rhs, "pochhammer-loginv-4term"),
    "poly-ex1": Evaluator(tables.poly_ex1_rhs, "pochhammer-logk", _poly_arg),
    "poly-ex2": Evaluator(tables.poly_ex2_rhs, "pochhammer-logk-diff", _poly_arg),
    "poly-ex2-case1": Evaluator(
        tables.poly_ex2_case1_rhs, "pochhammer-logk-diff", _half_pair(n=1, c=-1.0, a=1.0, k=-1.0)
    ),
    "poly-ex2-case2": Evaluator(
        tables.poly_ex2_case2_rhs, "pochhammer-logk-diff", _half_pair(c=-1.0, a=1.0, k=-1.0)
    ),
    "poly-ex2-case3": Evaluator(
        tables.poly_ex2_case3_rhs, "pochhammer-logk-diff", _half_pair(c=-2.0, a=2.0, k=-1.0)
    ),
    "poch-malm-ex1": Evaluator(tables.poch_malm_ex1_rhs, "pochhammer-loglog-diff", _fixed(a=1.0, k=-1.0)),
    "poch-malm-ex1-case": Evaluator(
        tables.poch_malm_ex1_case_rhs, "pochhammer-loglog-diff", _half_pair(c=-1.0, a=1.0, k=-1.0)
    ),
    "grobner-piecewise": Evaluator(
        tables.grobner_piecewise, "grobner-power", classical=tables.grobner_piecewise_series
    ),
}

for _a in (2, 3, 4):
    EVALUATORS[f"malm1-catalan-a{_a}"] = Evaluator(
        malmsten.malm1_catalan_scaled_rhs,
        "power-loglog",
        lambda p: p.replace(n=2, m=1.0, v=2.0, b=p.a * p.a, k=0.0),
    )


def evaluator(example_id: str) -> Evaluator:

    try:
        return EVALUATORS[example_id]
    except KeyError:
        raise UnknownFamilyError(example_id) from None


def known_ids() -> List[str]:
    return sorted(EVALUATORS)


def example_rhs(example_id: str, p: ParamSet, convention: Optional[Convention] = None) -> complex:
    """The right-hand side of catalog entry `example_id` at `p`."""

    return evaluator(example_id).rhs(p, convention)


def example_second(example_id: str, p: ParamSet, convention: Optional[Convention] = None) -> complex:
    """The independent left-side evaluator of a series-kind entry."""

    ev = evaluator(example_id)
    if ev.second is None:
        raise CatalogError(f"entry '{example_id}' is verified by quadrature, not by a second series", field="kind")
    return ev.second(p, convention)


def example_classical(example_id: str, p: ParamSet, convention: Optional[Convention] = None) -> complex:

    ev = evaluator(example_id)
    if ev.classical is None:
        raise CatalogError(f"entry '{example_id}' has no classical closed form", field="kind")
    return ev.classical(p, convention)


def example_cross_check(example_id: str, p: ParamSet, convention: Optional[Convention] = None) -> Optional[complex]:
    """The entry's closed form reached through a master identity's k-derivative, or None."""

    ev = evaluator(example_id)
    return None if ev.cross is None else ev.cross(p, convention)


def lhs_integrand(example_id: str, p: ParamSet, side: Side = Side.NONE) -> IntegrandSpec:
    """The left-hand side integrand of `example_id`, bound to the family parameters."""

    ev = evaluator(example_id)
    if ev.family is None:
        raise CatalogError(f"entry '{example_id}' has no integrand", field="family")
    return build_integrand(ev.family, ev.adapter(p), side)
