"""
Left-hand side integrands of the identity families.

Every family is a function f(x, p, eta) of a positive abscissa, a ParamSet and
the deformation offset eta, plus a function listing its singular points on
(0, inf). Factors that are branch-sensitive on the real line (the
log(log^2 a - log^2 x) type) are evaluated at x (1 + i eta); everything else
sees the real x and the principal branch.
"""

import math
from dataclasses import dataclass
from typing import Callable, Dict, List, Optional, Tuple

from turbo_lerch.core.combinat import pochhammer
from turbo_lerch.core.errors import PoleError, UnknownFamilyError
from turbo_lerch.core.quad import PvPole, QuadratureSpec, Side
from turbo_lerch.core.special import cexp, clog, cpow
from turbo_lerch.identities.params import ParamSet

PI = math.pi

DEFORMATION_ETA = 1e-150
_SAME_POINT = 1e-12

Family = Callable[[complex, ParamSet, float], complex]


@dataclass(frozen=True)
class Singularity:
    """A point of (0, inf) where the integrand is not smooth."""

    location: float
    kind: str = "pole"
    order: int = 1

    def as_dict(self) -> Dict[str, object]:
        return {"location": self.location, "kind": self.kind, "order": self.order}


SingularityFinder = Callable[[ParamSet], List[Singularity]]


@dataclass(frozen=True)
class FamilyDef:
    name: str
    func: Family
    singularities: SingularityFinder
    formula: str


FAMILIES: Dict[str, FamilyDef] = {}


def family(name: str, formula: str, singularities: SingularityFinder):
    """Registers an integrand family under `name`."""

    def register(func: Family) -> Family:
        FAMILIES[name] = FamilyDef(name, func, singularities, formula)
        return func

    return register


def side_eta(side: Side) -> float:

    side = Side(side)
    if side is Side.ABOVE:
        return DEFORMATION_ETA
    if side is Side.BELOW:
        return -DEFORMATION_ETA
    return 0.0


@dataclass(frozen=True)
class IntegrandSpec:
    """
    A bound integrand: family, parameters, singular points and the side the
    integration path takes around real poles.
    """

    family: str
    params: ParamSet
    func: Family
    singularities: Tuple[Singularity, ...]
    side: Side = Side.NONE

    @property
    def eta(self) -> float:
        return side_eta(self.side)

    def evaluate(self, x: float) -> complex:

        for sing in self.singularities:
            if sing.kind == "pole" and abs(x - sing.location) <= _SAME_POINT * sing.location:
                raise PoleError(f"{self.family} integrand has a pole at x = {sing.location:g}", location=x)
        return complex(self.func(complex(x), self.params, self.eta))

    def __call__(self, x: float) -> complex:
        return self.evaluate(x)

    def quadrature_spec(self, base: QuadratureSpec) -> QuadratureSpec:
        """`base` with this integrand's poles and branch points added."""

        poles = tuple(
            PvPole(s.location, s.order, self.side) for s in self.singularities if s.kind == "pole"
        )
        pole_locs = {p.location for p in poles}
        splits = set(base.split_points)
        splits |= {s.location for s in self.singularities if s.kind != "pole" and s.location not in pole_locs}
        splits = tuple(sorted(x for x in splits if base.lower < x < base.upper))

        spec = QuadratureSpec(
            split_points=splits,
            pv_poles=base.pv_poles,
            rel_tol=base.rel_tol,
            abs_tol=base.abs_tol,
            max_refinement_depth=base.max_refinement_depth,
            rule=base.rule,
            lower=base.lower,
            upper=base.upper,
        )
        for pole in poles:
            spec = spec.with_pole(pole)
        return spec


def build_integrand(name: str, p: ParamSet, side: Side = Side.NONE) -> IntegrandSpec:
    """Binds family `name` to `p`; unknown names raise UnknownFamilyError."""

    definition = FAMILIES.get(name)
    if definition is None:
        raise UnknownFamilyError(name)
    found = _merge(definition.singularities(p))
    return IntegrandSpec(name, p, definition.func, tuple(found), Side(side))


# Shared pieces


def _positive(value: complex) -> Optional[float]:

    value = complex(value)
    if value.imag == 0 and value.real > 0 and math.isfinite(value.real):
        return value.real
    return None


def _root(ratio: complex, v: complex) -> Optional[float]:
    """The positive real x with x^v = ratio, if there is one."""

    r = _positive(ratio)
    if r is None or complex(v).imag != 0 or complex(v).real == 0:
        return None
    return r ** (1.0 / complex(v).real)


def _merge(found: List[Singularity]) -> List[Singularity]:

    out: List[Singularity] = []
    for sing in sorted(found, key=lambda s: s.location):
        if out and abs(out[-1].location - sing.location) <= _SAME_POINT * sing.location:
            prev = out[-1]
            if sing.kind == "pole" and (prev.kind != "pole" or sing.order > prev.order):
                out[-1] = sing
            continue
        out.append(sing)
    return out


def _is_nonneg_int(k: complex) -> bool:

    k = complex(k)
    return k.imag == 0 and k.real >= 0 and k.real == math.floor(k.real)


def _log_zero_order(a: complex, x0: float, k: complex) -> int:
    """Order of the zero of log^k(a x) at x0 (0 unless a x0 = 1 and k is a whole number)."""

    if _is_nonneg_int(k) and abs(complex(a) * x0 - 1.0) <= _SAME_POINT:
        return int(complex(k).real)
    return 0


def _pole_or_branch(x0: Optional[float], order: int) -> List[Singularity]:

    if x0 is None:
        return []
    if order <= 0:
        return [Singularity(x0, "branch")]
    return [Singularity(x0, "pole", order)]


def _branch_at(*points: Optional[float]) -> List[Singularity]:
    return [Singularity(x, "branch") for x in points if x is not None]


def _inv(value: complex) -> Optional[float]:

    x = _positive(value)
    return None if x is None else 1.0 / x


def _logk(w: complex, k: complex) -> complex:
    """log^k(w) = exp(k log(log w)); log^0 is 1 everywhere."""

    if k == 0:
        return 1.0 + 0.0j
    return cpow(clog(w), k)


def _loglog(w: complex) -> complex:
    return clog(clog(w))


def _deformed_log(x: complex, eta: float) -> complex:
    """log of x (1 + i eta), to first order in eta."""

    return clog(x) + 1j * eta


def _rising(y: complex, n: int) -> complex:
    """(y)_(1+n) as a product."""

    return pochhammer(y, n + 1)


def _rising_roots(b: complex, c: complex, v: complex, n: int) -> List[Optional[float]]:
    """Positive zeros of (b + c x^v)_(1+n): x^v = -(b+j)/c."""

    return [_root(-(b + j) / c, v) for j in range(n + 1)]


# Pochhammer denominators (b + c x^v)_(1+n)


def _pochhammer_logk_sings(p: ParamSet) -> List[Singularity]:

    n = p.integer("n")
    out = []
    for x0 in _rising_roots(p.b, p.c, p.v, n):
        if x0 is not None:
            out += _pole_or_branch(x0, 1 - _log_zero_order(p.a, x0, p.k))
    if p.k != 0:
        out += _branch_at(_inv(p.a))
    return out


@family("pochhammer-logk", "x^(m-1) log^k(a x) / (b + c x^v)_(1+n)", _pochhammer_logk_sings)
def pochhammer_logk(x, p, eta):
    return cpow(x, p.m - 1) * _logk(p.a * x, p.k) / _rising(p.b + p.c * cpow(x, p.v), p.integer("n"))


def _pochhammer_loglog_sings(p: ParamSet) -> List[Singularity]:

    n = p.integer("n")
    out = [Singularity(x0, "pole") for x0 in _rising_roots(p.b, p.c, p.v, n) if x0 is not None]
    return out + _branch_at(_inv(p.a))


@family(
    "pochhammer-loglog",
    "x^(m-1) log^k(a x) log(log(a x)) / (b + c x^v)_(1+n)",
    _pochhammer_loglog_sings,
)
def pochhammer_loglog(x, p, eta):

    w = p.a * x
    return cpow(x, p.m - 1) * _logk(w, p.k) * _loglog(w) / _rising(p.b + p.c * cpow(x, p.v), p.integer("n"))


def _pochhammer_diff_sings(p: ParamSet) -> List[Singularity]:

    n = p.integer("n")
    out = [Singularity(x0, "pole") for x0 in _rising_roots(p.b, p.c, p.v, n) if x0 is not None]
    return out + _branch_at(_inv(p.a))


@family(
    "pochhammer-logk-diff",
    "(x^s - x^m) log^k(a x) / (b + c x^v)_(1+n)",
    _pochhammer_diff_sings,
)
def pochhammer_logk_diff(x, p, eta):

    numerator = cpow(x, p.s) - cpow(x, p.m)
    return numerator * _logk(p.a * x, p.k) / _rising(p.b + p.c * cpow(x, p.v), p.integer("n"))


def _numerator_zero_order(p: ParamSet, x0: float) -> int:
    """x^s - x^m has a simple zero at x = 1 when s != m."""

    return 1 if abs(x0 - 1.0) <= _SAME_POINT and complex(p.s) != complex(p.m) else 0


def _pochhammer_loglog_diff_sings(p: ParamSet) -> List[Singularity]:

    n = p.integer("n")
    out = []
    for x0 in _rising_roots(p.b, p.c, p.v, n):
        if x0 is not None:
            order = 1 - _numerator_zero_order(p, x0) - _log_zero_order(p.a, x0, p.k)
            out += _pole_or_branch(x0, order)
    return out + _branch_at(_inv(p.a))


@family(
    "pochhammer-loglog-diff",
    "(x^s - x^m) log^k(a x) log(log(a x)) / (b + c x^v)_(1+n)",
    _pochhammer_loglog_diff_sings,
)
def pochhammer_loglog_diff(x, p, eta):

    w = p.a * x
    numerator = cpow(x, p.s) - cpow(x, p.m)
    return numerator * _logk(w, p.k) * _loglog(w) / _rising(p.b + p.c * cpow(x, p.v), p.integer("n"))


# Power denominators (1 + b x^v)^(n+1)


def _power_root(p: ParamSet) -> Optional[float]:
    return _root(-1.0 / p.b, p.v)


def _power_logk_sings(p: ParamSet) -> List[Singularity]:

    x0 = _power_root(p)
    out = []
    if x0 is not None:
        out += _pole_or_branch(x0, p.integer("n") + 1 - _log_zero_order(p.a, x0, p.k))
    if p.k != 0:
        out += _branch_at(_inv(p.a))
    return out


@family("power-logk", "x^(m-1) log^k(a x) / (1 + b x^v)^(n+1)", _power_logk_sings)
def power_logk(x, p, eta):
    return cpow(x, p.m - 1) * _logk(p.a * x, p.k) / cpow(1.0 + p.b * cpow(x, p.v), p.integer("n") + 1)


def _power_loglog_sings(p: ParamSet) -> List[Singularity]:

    x0 = _power_root(p)
    out = [] if x0 is None else [Singularity(x0, "pole", p.integer("n") + 1)]
    return out + _branch_at(_inv(p.a))


@family(
    "power-loglog",
    "x^(m-1) log^k(a x) log(log(a x)) / (1 + b x^v)^(n+1)",
    _power_loglog_sings,
)
def power_loglog(x, p, eta):

    w = p.a * x
    return cpow(x, p.m - 1) * _logk(w, p.k) * _loglog(w) / cpow(1.0 + p.b * cpow(x, p.v), p.integer("n") + 1)


def _power_loglog_diff_sings(p: ParamSet) -> List[Singularity]:

    x0 = _power_root(p)
    out = []
    if x0 is not None:
        # the numerator vanishes at x = 1
        order = p.integer("n") + 1
        if abs(x0 - 1.0) <= _SAME_POINT:
            order -= 1
            if abs(p.a - 1.0) <= _SAME_POINT and complex(p.k).imag == 0:
                order -= int(math.floor(complex(p.k).real))
        out += _pole_or_branch(x0, order)
    return out + _branch_at(_inv(p.a))


@family(
    "power-loglog-diff",
    "(x^(s-1) - x^(m-1)) log^k(a x) log(log(a x)) / (1 + b x^v)^(n+1)",
    _power_loglog_diff_sings,
)
def power_loglog_diff(x, p, eta):

    w = p.a * x
    numerator = cpow(x, p.s - 1) - cpow(x, p.m - 1)
    return numerator * _logk(w, p.k) * _loglog(w) / cpow(1.0 + p.b * cpow(x, p.v), p.integer("n") + 1)


# log(log^2 a - log^2 x) and its reciprocal


def _log_sq_branches(p: ParamSet) -> List[Singularity]:

    a = _positive(p.a)
    if a is None or a == 1.0:
        return []
    return _branch_at(a, 1.0 / a)


def _log_sq_arg(x, p, eta) -> complex:

    la = clog(p.a)
    lx = _deformed_log(x, eta)
    return la * la - lx * lx


@family(
    "log-sq-pochhammer",
    "x^(m-1) log(log^2 a - log^2 x) / (b + c x^v)_(1+n)",
    lambda p: _log_sq_branches(p)
    + [Singularity(x0, "pole") for x0 in _rising_roots(p.b, p.c, p.v, p.integer("n")) if x0 is not None],
)
def log_sq_pochhammer(x, p, eta):
    return cpow(x, p.m - 1) * clog(_log_sq_arg(x, p, eta)) / _rising(p.b + p.c * cpow(x, p.v), p.integer("n"))


def _half_roots(n: int) -> List[Singularity]:
    """Positive zeros of ((x^2-1)/2)_(1+n): only x = 1."""

    return [Singularity(1.0, "pole")]


@family(
    "log-sq-half",
    "log(log^2 a - log^2 x) / ((x^2 - 1)/2)_(1+n)",
    lambda p: _log_sq_branches(p) + _half_roots(p.integer("n")),
)
def log_sq_half(x, p, eta):
    return clog(_log_sq_arg(x, p, eta)) / _rising((x * x - 1.0) / 2.0, p.integer("n"))


@family(
    "log-sq-rational",
    "log(log^2 a - log^2 x) / (1 - x^v)",
    lambda p: _log_sq_branches(p) + [Singularity(1.0, "pole")],
)
def log_sq_rational(x, p, eta):
    return clog(_log_sq_arg(x, p, eta)) / (1.0 - cpow(x, p.v))


@family(
    "inv-log-sq-half",
    "1 / ((log^2 a - log^2 x) ((x^2 - 1)/2)_(1+n))",
    lambda p: [Singularity(s.location, "pole") for s in _log_sq_branches(p)] + _half_roots(p.integer("n")),
)
def inv_log_sq_half(x, p, eta):
    return 1.0 / (_log_sq_arg(x, p, eta) * _rising((x * x - 1.0) / 2.0, p.integer("n")))


# 1 / (a^2 pi^2 - log^2 x) with an a-scaled log


def _scaled_log_points(p: ParamSet, order: int) -> List[Singularity]:

    a = complex(p.a)
    if a.imag != 0 or a.real == 0:
        return []
    t = math.exp(abs(a.real) * PI)
    return [Singularity(1.0 / t, "pole", order), Singularity(t, "pole", order)]


@family(
    "inv-log-sq-scaled",
    "(1 + b x^v)^(-1-n) / (a^2 pi^2 - log^2 x)",
    lambda p: _scaled_log_points(p, 1) + _pole_or_branch(_power_root(p), p.integer("n") + 1),
)
def inv_log_sq_scaled(x, p, eta):

    lx = _deformed_log(x, eta)
    return cpow(1.0 + p.b * cpow(x, p.v), -1 - p.integer("n")) / (p.a * p.a * PI * PI - lx * lx)


def _rotated(p: ParamSet) -> complex:
    return cexp(1j * PI * p.b)


@family(
    "inv-log-sq-scaled-sq",
    "(1 + e^(i b pi) x^v)^(-1-n) / (log^2 x - a^2 pi^2)^2",
    lambda p: _scaled_log_points(p, 2) + _pole_or_branch(_root(-1.0 / _rotated(p), p.v), p.integer("n") + 1),
)
def inv_log_sq_scaled_sq(x, p, eta):

    lx = _deformed_log(x, eta)
    gap = lx * lx - p.a * p.a * PI * PI
    return cpow(1.0 + _rotated(p) * cpow(x, p.v), -1 - p.integer("n")) / (gap * gap)


# Polygamma type integrands


@family("diekama", "1 / ((1 + x)^2 (a^2 + log^2 x)^2)", lambda p: [])
def diekama(x, p, eta):

    lx = clog(x)
    q = p.a * p.a + lx * lx
    return 1.0 / ((1.0 + x) ** 2 * q * q)


@family(
    "exercise",
    "log^k x / ((1 + e^(i b pi) x)^2 (a^2 pi^2 + log^2 x)^2)",
    lambda p: _pole_or_branch(_root(-1.0 / _rotated(p), 1.0), 2),
)
def exercise(x, p, eta):

    lx = clog(x)
    q = p.a * p.a * PI * PI + lx * lx
    return _logk(x, p.k) / ((1.0 + _rotated(p) * x) ** 2 * q * q)


# Table entries


@family(
    "shifted-power",
    "x^(s-1) / (a - x)^n",
    lambda p: _pole_or_branch(_positive(p.a), p.integer("n")),
)
def shifted_power(x, p, eta):
    return cpow(x, p.s - 1) / cpow(p.a - x, p.integer("n"))


@family(
    "prudnikov",
    "x^(alpha-1) log x / (z^mu + x^mu)^m",
    lambda p: _pole_or_branch(_root(-cpow(p.z, p.mu), p.mu), p.integer("m")),
)
def prudnikov(x, p, eta):
    return cpow(x, p.alpha - 1) * clog(x) / cpow(cpow(p.z, p.mu) + cpow(x, p.mu), p.integer("m"))


@family(
    "gr-4.267.22",
    "(1 + x^2) (x^(p-1) - x^(q-1)) / ((1 + x^(2+4n)) log x)",
    lambda p: [],
)
def gr_4_267_22(x, p, eta):

    n = p.integer("n")
    return (1.0 + x * x) * (cpow(x, p.p - 1) - cpow(x, p.q - 1)) / ((1.0 + cpow(x, 2 + 4 * n)) * clog(x))


@family(
    "gr-4.267.23",
    "(x^2 - 1) (x^p - x^q) log^k x / (x^(2n) - 1)",
    lambda p: [],
)
def gr_4_267_23(x, p, eta):

    n = p.integer("n")
    return (x * x - 1.0) * (cpow(x, p.p) - cpow(x, p.q)) * _logk(x, p.k) / (cpow(x, 2 * n) - 1.0)


@family(
    "gr-4.267.23-log",
    "(1 - x^2) (x^(p-1) - x^(q-1)) / ((1 - x^(2n)) log x)",
    lambda p: [],
)
def gr_4_267_23_log(x, p, eta):

    n = p.integer("n")
    return (1.0 - x * x) * (cpow(x, p.p - 1) - cpow(x, p.q - 1)) / ((1.0 - cpow(x, 2 * n)) * clog(x))


@family(
    "gr-4.267.30",
    "x^(s-1) (1 - x^p) (1 - x^q) / ((1 - x^(p+q+2s)) log x)",
    lambda p: [],
)
def gr_4_267_30(x, p, eta):

    total = p.p + p.q + 2.0 * p.s
    numerator = cpow(x, p.s - 1) * (1.0 - cpow(x, p.p)) * (1.0 - cpow(x, p.q))
    return numerator / ((1.0 - cpow(x, total)) * clog(x))


@family(
    "grobner-log",
    "(x^(p-1) - x^(q-1)) (1 - x^s) / ((1 - x^v)^(n+1) log x)",
    lambda p: _pole_or_branch(1.0, p.integer("n")),
)
def grobner_log(x, p, eta):

    numerator = (cpow(x, p.p - 1) - cpow(x, p.q - 1)) * (1.0 - cpow(x, p.s))
    return numerator / (cpow(1.0 - cpow(x, p.v), p.integer("n") + 1) * clog(x))


@family(
    "grobner-power",
    "x^(m alpha/2 - 1) log^(2n) x / (1 + x^alpha)^m",
    lambda p: [],
)
def grobner_power(x, p, eta):

    n = p.integer("n")
    return cpow(x, p.m * p.alpha / 2.0 - 1.0) * cpow(clog(x), 2 * n) / cpow(1.0 + cpow(x, p.alpha), p.m)


def _loginv_4term_sings(p: ParamSet) -> List[Singularity]:

    n = p.integer("n")
    return [Singularity(x0, "pole") for x0 in (_root(p.b + j, p.v) for j in range(n + 1)) if x0 is not None]


@family(
    "pochhammer-loginv-4term",
    "(x^p - x^q) (x^s - 1) / (log x (b - x^v)_(1+n))",
    _loginv_4term_sings,
)
def pochhammer_loginv_4term(x, p, eta):

    numerator = (cpow(x, p.p) - cpow(x, p.q)) * (cpow(x, p.s) - 1.0)
    return numerator / (clog(x) * _rising(p.b - cpow(x, p.v), p.integer("n")))


@family(
    "loglog-double-pole",
    "x^(m-1) log(log(a x)) / (x^v - 1)^2",
    lambda p: [Singularity(1.0, "pole", 2)] + _branch_at(_inv(p.a)),
)
def loglog_double_pole(x, p, eta):

    d = cpow(x, p.v) - 1.0
    return cpow(x, p.m - 1) * _loglog(p.a * x) / (d * d)
