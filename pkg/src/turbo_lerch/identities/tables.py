"""
Reproductions of classical integral-table entries as finite Hurwitz-Lerch sums,
together with the closed forms the tables print. Series-kind entries pair two
evaluators instead of a quadrature.
"""

import cmath
import math
from typing import Callable, Optional

from turbo_lerch.core import special
from turbo_lerch.core.combinat import Convention, pochhammer, stirling1
from turbo_lerch.core.errors import NonConvergenceError
from turbo_lerch.core.special import KahanSum, clog, cpow
from turbo_lerch.identities.derived import binom_weight
from turbo_lerch.identities.params import ParamSet
from turbo_lerch.identities.theorems import (
    DEFAULT_CONVENTION,
    PI,
    TWO_PI,
    cot,
    csc,
    eix,
    phi,
    phi_ds,
    shift,
    shift_log,
    term,
)
from turbo_lerch.utils.log import get_logger

logger = get_logger(__name__)

CVZ_DIGITS = 16
CVZ_EARLY_EXIT = 1e-14


def _conv(convention: Optional[Convention]) -> Convention:
    return Convention(convention or DEFAULT_CONVENTION)


def _stirling_pairs(n: int, convention: Convention, poch_base: Callable[[int], complex]):
    """Yields (j, l, S_n^(j), poch) skipping the terms whose Pochhammer weight vanishes."""

    for j in range(n + 1):
        s_nj = stirling1(n, j, convention)
        if s_nj == 0:
            continue
        for l in range(j + 1):
            poch = poch_base(l)
            if poch == 0:
                continue
            yield j, l, s_nj, poch


# -- Brychkov 6.15: int x^(s-1) / (a - x)^n dx


def _brychkov_sum(p: ParamSet, convention: Convention) -> complex:
    """The printed double sum, without its leading sign and without 1/(n-1)!."""

    s, a = p.s, p.a
    n = p.integer("n")
    z = eix(TWO_PI * s)
    u = shift(1.0, -a * a)
    front = cpow(-1.0 / a, -s) * cpow(a, -n) * eix(PI * (0.5 - n + s))

    total = KahanSum()
    for j, l, s_nj, poch in _stirling_pairs(n - 1, convention, lambda l: pochhammer(1.0 - l, l)):
        with term("brychkov-6.15", j, l):
            weight = (
                cpow(-1, -j + l)
                * cpow(1j, -l)
                * cpow(TWO_PI, 1.0 - l)
                * cpow(1.0 - s, j - l)
                * math.comb(j, l)
            )
            total.add(front * weight * poch * s_nj * phi(z, l, u))
    return total.value


def brychkov_615_rhs(p: ParamSet, convention: Optional[Convention] = None) -> complex:
    """int x^(s-1) / (a - x)^n dx, printed form (sign erratum recorded in the catalog)."""

    n = p.integer("n")
    return -_brychkov_sum(p, _conv(convention)) / math.factorial(n - 1)


def brychkov_615_series(p: ParamSet, convention: Optional[Convention] = None) -> complex:
    return _brychkov_sum(p, _conv(convention))


def brychkov_615_classical(p: ParamSet, convention: Optional[Convention] = None) -> complex:
    """(-1)^n (-a)^(s-n) Gamma(s) Gamma(n-s) / (n-1)!"""

    s, a = p.s, p.a
    n = p.integer("n")
    beta = special.gamma(s) * special.gamma(n - s) / math.factorial(n - 1)
    return (-1) ** n * cpow(-a, s - n) * beta


def brychkov_615_series_classical(p: ParamSet, convention: Optional[Convention] = None) -> complex:
    """-pi (-a)^(s-n) (1-n+s) (2-n+s)_(n-1) / (s sin(s pi))"""

    s, a = p.s, p.a
    n = p.integer("n")
    return -PI * cpow(-a, s - n) * (1.0 - n + s) * pochhammer(2.0 - n + s, n - 1) * csc(s * PI) / s


# -- Prudnikov 2.6.4.8: int x^(alpha-1) log x / (z^mu + x^mu)^m dx


def _prudnikov_terms(p: ParamSet, convention: Convention):

    alpha, mu, z = p.alpha, p.mu, p.z
    m = p.integer("m")
    e = eix(TWO_PI * alpha / mu)
    u = shift(mu, cpow(cpow(z, -mu), -1.0 / mu))
    for j, l, s_mj, poch in _stirling_pairs(m - 1, convention, lambda l: pochhammer(2.0 - l, l)):
        with term("prudnikov-2.6.4.8", j, l):
            yield j, l, s_mj * poch * math.comb(j, l) * phi(e, l - 1, u)


def prudnikov_rhs(p: ParamSet, convention: Optional[Convention] = None) -> complex:
    alpha, mu, z = p.alpha, p.mu, p.z
    m = p.integer("m")
    zmu = cpow(z, -mu)
    front = (
        cpow(z, -m * mu)
        * eix(PI * (alpha - (m - 0.5) * mu) / mu)
        * cpow(zmu, -alpha / mu)
        / (mu * math.factorial(m - 1))
    )

    total = KahanSum()
    for j, l, value in _prudnikov_terms(p, _conv(convention)):
        weight = (
            cpow(-1, -j)
            * cpow(TWO_PI, 2.0 - l)
            * cpow(1.0 - alpha / mu, j - l)
            * cpow(-1.0 / mu, l)
            * cpow(1j / mu, 1.0 - l)
        )
        total.add(front * weight * value)
    return total.value


def prudnikov_series(p: ParamSet, convention: Optional[Convention] = None) -> complex:
    alpha, mu = p.alpha, p.mu
    m = p.integer("m")
    front = eix(PI * (alpha - (m - 0.5) * mu) / mu)

    total = KahanSum()
    for j, l, value in _prudnikov_terms(p, _conv(convention)):
        weight = (
            cpow(-1, -j)
            * cpow(TWO_PI, 2.0 - l)
            * (-1) ** l
            * cpow(1j, 1.0 - l)
            * cpow(mu, -j + l)
            * cpow(mu - alpha, j - l)
        )
        total.add(front * weight * value)
    return total.value


def _prudnikov_bracket(p: ParamSet) -> complex:

    alpha, mu, z = p.alpha, p.mu, p.z
    m = p.integer("m")
    harmonic = sum(mu / (k * mu - alpha) for k in range(1, m))
    return mu * clog(z) - harmonic - PI * cot(alpha * PI / mu)


def prudnikov_series_classical(p: ParamSet, convention: Optional[Convention] = None) -> complex:
    """(1 - alpha/mu)_(m-1) pi (mu log z - sum_k mu/(k mu - alpha) - pi cot(alpha pi/mu)) / sin(alpha pi/mu)"""

    alpha, mu = p.alpha, p.mu
    m = p.integer("m")
    return pochhammer(1.0 - alpha / mu, m - 1) * PI * _prudnikov_bracket(p) * csc(alpha * PI / mu)


def prudnikov_classical(p: ParamSet, convention: Optional[Convention] = None) -> complex:

    alpha, mu, z = p.alpha, p.mu, p.z
    m = p.integer("m")
    scale = cpow(z, alpha - mu * m) / (math.factorial(m - 1) * mu * mu)
    return scale * prudnikov_series_classical(p)


# -- Gradshteyn-Ryzhik 3.194.4: int x^(a-1) / (1 + b x)^(n+1) dx


def _gr_3194_4_sum(p: ParamSet, convention: Convention) -> complex:

    a, b = p.a, p.b
    n = p.integer("n")
    z = eix(TWO_PI * a)
    u = shift(1.0, 1.0 / b)
    front = eix((-0.5 + a - n) * PI) / math.factorial(n)

    total = KahanSum()
    for j, l, s_nj, poch in _stirling_pairs(n, convention, lambda l: pochhammer(1.0 - l, l)):
        with term("gr-3.194.4", j, l):
            weight = (
                cpow(-1, -j + l)
                * cpow(1j, -l)
                * cpow(1.0 - a, j - l)
                * cpow(TWO_PI, 1.0 - l)
                * math.comb(j, l)
            )
            total.add(front * weight * poch * s_nj * phi(z, l, u))
    return total.value


def gr_3194_4_rhs(p: ParamSet, convention: Optional[Convention] = None) -> complex:
    return cpow(p.b, -p.a) * _gr_3194_4_sum(p, _conv(convention))


def gr_3194_4_series(p: ParamSet, convention: Optional[Convention] = None) -> complex:
    return _gr_3194_4_sum(p, _conv(convention))


def gr_3194_4_series_classical(p: ParamSet, convention: Optional[Convention] = None) -> complex:
    """(-1)^n pi C(a-1, n) csc(a pi), the table value with b^(-a) removed."""

    a = p.a
    n = p.integer("n")
    # C(a-1, n) = (-1)^n (1-a)_n / n!
    binom = (-1) ** n * pochhammer(1.0 - a, n) / math.factorial(n)
    return (-1) ** n * PI * binom * csc(a * PI)


def gr_3194_4_classical(p: ParamSet, convention: Optional[Convention] = None) -> complex:
    return cpow(p.b, -p.a) * gr_3194_4_series_classical(p)


# -- Gradshteyn-Ryzhik 4.267.22 / 4.267.23 / 4.267.30


def gr_4267_22_rhs(p: ParamSet, convention: Optional[Convention] = None) -> complex:
    """int (1 + x^2)(x^(p-1) - x^(q-1)) / ((1 + x^(2+4n)) log x) dx as atanh values"""

    n, pp, q = p.n, p.p, p.q
    w = PI / (2.0 + 4.0 * n)
    value = (
        cmath.atanh(eix(pp * w))
        + cmath.atanh(eix((2.0 + pp) * w))
        - cmath.atanh(eix(q * w))
        - cmath.atanh(eix((2.0 + q) * w))
    )
    return -2.0 * value


def gr_4267_22_classical(p: ParamSet, convention: Optional[Convention] = None) -> complex:
    """log(tan(p t) tan((p+2) t) cot(q t) cot((q+2) t)), t = pi / (4 (2n+1))"""

    n, pp, q = p.n, p.p, p.q
    t = PI / (4.0 * (2.0 * n + 1.0))
    return clog(cmath.tan(pp * t) * cmath.tan((pp + 2.0) * t) * cot(q * t) * cot((q + 2.0) * t))


def _li_neg(k, z) -> complex:
    return special.polylog(-k, z)


def _gr_4267_23_li(n, pp, q, k) -> complex:

    with term("gr-4.267.23", 0):
        value = (
            _li_neg(k, eix((1.0 + pp) * PI / n))
            - _li_neg(k, eix((3.0 + pp) * PI / n))
            - _li_neg(k, eix(PI * (1.0 + q) / n))
            + _li_neg(k, eix(PI * (3.0 + q) / n))
        )
    return cpow(1j / n, k - 1.0) * cpow(PI, 1.0 + k) * value / (n * n)


def gr_4267_23_rhs(p: ParamSet, convention: Optional[Convention] = None) -> complex:
    """int (x^2 - 1)(x^p - x^q) log^k x / (x^(2n) - 1) dx"""

    return _gr_4267_23_li(p.n, p.p, p.q, p.k)


def gr_4267_23_log_rhs(p: ParamSet, convention: Optional[Convention] = None) -> complex:
    """int (1 - x^2)(x^(p-1) - x^(q-1)) / ((1 - x^(2n)) log x) dx"""

    n, pp, q = p.n, p.p, p.q
    t = PI / (2.0 * n)
    return clog(csc((2.0 + pp) * t) * csc(q * t) * cmath.sin(pp * t) * cmath.sin((2.0 + q) * t))


def gr_4267_23_log_li(p: ParamSet, convention: Optional[Convention] = None) -> complex:
    return _gr_4267_23_li(p.n, p.p - 1.0, p.q - 1.0, -1.0)


def _gr_4267_30_li(m, big_v, k) -> complex:

    with term("gr-4.267.30", 0):
        li = _li_neg(k, eix(2.0 * (1.0 + m) * PI / big_v))
    return cpow(TWO_PI, 1.0 + k) * cpow(1j / big_v, k - 1.0) * li / (big_v * big_v)


def gr_4267_30_li_rhs(p: ParamSet, convention: Optional[Convention] = None) -> complex:
    """int x^m log^k x / (1 - x^(p+q+2s)) dx"""

    return _gr_4267_30_li(p.m, p.p + p.q + 2.0 * p.s, p.k)


def gr_4267_30_rhs(p: ParamSet, convention: Optional[Convention] = None) -> complex:
    """int x^(s-1) (1 - x^p)(1 - x^q) / ((1 - x^(p+q+2s)) log x) dx"""

    pp, q, s = p.p, p.q, p.s
    big_v = pp + q + 2.0 * s
    num = 1.0 + cmath.cos(PI * (pp + q) / big_v)
    den = 1.0 + cmath.cos(PI * (pp - q) / big_v)
    return clog(num / den)


def gr_4267_30_li_sum(p: ParamSet, convention: Optional[Convention] = None) -> complex:
    """The log-cos value rebuilt from four k = -1 polylog terms."""

    pp, q, s = p.p, p.q, p.s
    big_v = pp + q + 2.0 * s
    return (
        _gr_4267_30_li(s - 1.0, big_v, -1.0)
        + _gr_4267_30_li(pp + q + s - 1.0, big_v, -1.0)
        - _gr_4267_30_li(pp + s - 1.0, big_v, -1.0)
        - _gr_4267_30_li(q + s - 1.0, big_v, -1.0)
    )


# -- generalised Grobner forms


def grobner_general_rhs(p: ParamSet, convention: Optional[Convention] = None) -> complex:
    """int x^(m-1) log^k x / (1 - x^v)^(n+1) dx"""

    convention = _conv(convention)
    m, v, k = p.m, p.v, p.k
    n = p.integer("n")
    z = eix(TWO_PI * m / v)
    front = eix(PI * (m - (0.5 + n) * v) / v) / (v * math.factorial(n))

    total = KahanSum()
    for j, l, s_nj, poch in _stirling_pairs(n, convention, lambda l: pochhammer(1.0 + k - l, l)):
        with term("grobner-general", j, l):
            weight = (
                cpow(-1, -j - m / v)
                * cpow(TWO_PI, 1.0 + k - l)
                * cpow(1.0 - m / v, j - l)
                * cpow(-1.0 / v, l)
                * cpow(1j / v, k - l)
                * math.comb(j, l)
            )
            total.add(front * weight * poch * s_nj * special.polylog(-k + l, z))
    return total.value


def grobner_general_log_rhs(p: ParamSet, convention: Optional[Convention] = None) -> complex:
    """int (x^(p-1) - x^(q-1))(1 - x^s) / ((1 - x^v)^(n+1) log x) dx"""

    convention = _conv(convention)
    pp, q, s, v = p.p, p.q, p.s, p.v
    n = p.integer("n")

    def phase(x):
        return eix(PI * (x - (0.5 + n) * v) / v)

    def li(x, l):
        return special.polylog(1.0 + l, eix(TWO_PI * x / v))

    total = KahanSum()
    for j in range(n + 1):
        s_nj = stirling1(n, j, convention)
        if s_nj == 0:
            continue
        for l in range(j + 1):
            with term("grobner-general-log", j, l):
                weight = (
                    1j
                    * cpow(-1, -j + l - pp / v - q / v - s / v)
                    * cpow(-1.0 / v, l)
                    * cpow(1j / v, -l)
                    * math.comb(j, l)
                    * math.factorial(l)
                    / (TWO_PI**l * math.factorial(n))
                )
                bracket = (
                    -cpow(-1, (q + s) / v) * phase(pp) * cpow(1.0 - pp / v, j - l) * li(pp, l)
                    + cpow(-1, (pp + s) / v) * phase(q) * cpow(1.0 - q / v, j - l) * li(q, l)
                    + cpow(-1, q / v) * phase(pp + s) * cpow(1.0 - (pp + s) / v, j - l) * li(pp + s, l)
                    - cpow(-1, pp / v) * phase(q + s) * cpow(1.0 - (q + s) / v, j - l) * li(q + s, l)
                )
                total.add(weight * bracket * s_nj)
    return total.value


def _cvz_alternating(magnitude: Callable[[int], float], n_terms: int) -> complex:
    """
    Cohen-Villegas-Zagier acceleration of sum_k (-1)^k t_k. The weights c_k
    carry the alternating sign, so t_k enters without it.
    """
    d = (3.0 + math.sqrt(8.0)) ** n_terms
    d = (d + 1.0 / d) / 2.0
    b = -1.0
    c = -d
    acc = 0j
    for k in range(n_terms):
        c = b - c
        step = c * magnitude(k)
        acc += step
        if k > 2 and abs(step) < CVZ_EARLY_EXIT * abs(acc):
            break
        b *= 2.0 * (k + n_terms) * (k - n_terms) / ((2.0 * k + 1.0) * (k + 1.0))
    return acc / d


def _grobner_series(m, alpha, n: int) -> complex:
    """2 (2n)! (2/alpha)^(2n+1) sum_v C(-m, v) / (m + 2v)^(2n+1), Abel-summed."""

    n_terms = int(1.31 * CVZ_DIGITS) + 5
    # (m)_k / k!, the unsigned C(-m, k)
    coeffs = [1.0 + 0j]
    for k in range(1, n_terms + 8):
        coeffs.append(coeffs[-1] * (m + k - 1) / k)

    def magnitude(k: int) -> complex:
        return coeffs[k] / cpow(m + 2.0 * k, 2 * n + 1)

    first = _cvz_alternating(magnitude, n_terms)
    second = _cvz_alternating(magnitude, n_terms + 8)
    if abs(first - second) > 1e-9 * max(1.0, abs(second)):
        raise NonConvergenceError(
            "alternating binomial series did not settle",
            partial=second,
            diagnostics={"m": m, "alpha": alpha, "n": n, "delta": abs(first - second)},
        )
    return 2.0 * math.factorial(2 * n) * cpow(2.0 / alpha, 2 * n + 1) * second


def _grobner_odd(m: int, alpha, n: int, convention: Convention) -> complex:

    z = eix(m * PI)
    front = eix(PI * (-(m - 0.5) * alpha + m * alpha / 2.0) / alpha) / (alpha * math.factorial(m - 1))

    total = KahanSum()
    for j, l, s_mj, poch in _stirling_pairs(m - 1, convention, lambda l: pochhammer(1.0 - l + 2 * n, l)):
        with term("grobner-piecewise", j, l):
            weight = (
                cpow(-1, -j)
                * cpow(1.0 - m / 2.0, j - l)
                * cpow(TWO_PI, 1.0 - l + 2 * n)
                * cpow(-1.0 / alpha, l)
                * cpow(1j / alpha, -l + 2 * n)
                * math.comb(j, l)
            )
            total.add(front * weight * poch * s_mj * phi(z, l - 2 * n, 0.5))
    return total.value


def grobner_piecewise_rhs(m, alpha, n: int, convention: Optional[Convention] = None) -> complex:
    """
    int x^(m alpha/2 - 1) log^(2n) x / (1 + x^alpha)^m dx. Odd integer m uses the
    Hurwitz-Lerch double sum; every other m the accelerated binomial series.
    """
    m = complex(m)
    if m.imag == 0 and m.real == math.floor(m.real) and int(m.real) % 2 == 1 and m.real > 0:
        return _grobner_odd(int(m.real), alpha, n, _conv(convention))
    # even m leaves Phi(1, l - 2n, 1/2) in the double sum, which diverges
    logger.debug(f"grobner-piecewise: series branch for m = {m}")
    return _grobner_series(m, alpha, n)


def grobner_piecewise(p: ParamSet, convention: Optional[Convention] = None) -> complex:
    return grobner_piecewise_rhs(p.m, p.alpha, p.integer("n"), convention)


def grobner_piecewise_series(p: ParamSet, convention: Optional[Convention] = None) -> complex:
    return _grobner_series(p.m, p.alpha, p.integer("n"))


# -- log(log x)/log x and 1/log x forms over Pochhammer denominators


def thm2_loglog_k_neg1_rhs(p: ParamSet, convention: Optional[Convention] = None) -> complex:
    """int x^(m-1) log(log x) / (log x (b + c x^v)_(1+n)) dx"""

    m, v, b, c = p.m, p.v, p.b, p.c
    n = p.integer("n")
    z = eix(TWO_PI * m / v)
    log_2ipi = clog(2j * PI / v)

    total = KahanSum()
    for j in range(n + 1):
        with term("thm2-loglog-k-neg1", j):
            w = shift(v, cpow(c, -1.0 / v) * cpow(b + j, 1.0 / v))
            scale = cpow(c, -m / v) * eix(m * PI / v) * cpow(b + j, -1.0 + m / v)
            total.add(-binom_weight(n, j) * scale * (phi(z, 1, w) * log_2ipi - phi_ds(z, 1, w)))
    return total.value


def poch_loginv_1_rhs(p: ParamSet, convention: Optional[Convention] = None) -> complex:
    """int (x^s - x^m) / (log x (b + c x^v)_(1+n)) dx"""

    m, s, v, b, c = p.m, p.s, p.v, p.b, p.c
    n = p.integer("n")
    zm = eix(2.0 * (1.0 + m) * PI / v)
    zs = eix(TWO_PI * (1.0 + s) / v)

    total = KahanSum()
    for j in range(n + 1):
        with term("poch-loginv-1", j):
            w = shift(v, cpow(c, -1.0 / v) * cpow(b + j, 1.0 / v))
            scale = 1j * cpow(c, -(1.0 + m + s) / v) * cpow(b + j, -1.0 + 1.0 / v)
            m_part = -cpow(c, s / v) * eix(PI * (1.0 + m - 1.5 * v) / v) * cpow(b + j, m / v) * phi(zm, 1, w)
            s_part = cpow(c, m / v) * eix(PI * (1.0 + s - 1.5 * v) / v) * cpow(b + j, s / v) * phi(zs, 1, w)
            total.add(binom_weight(n, j) * scale * (m_part + s_part))
    return total.value


def poch_loginv_1_cneg_rhs(p: ParamSet, convention: Optional[Convention] = None) -> complex:
    """The c = -1 case, int (x^s - x^m) / (log x (b - x^v)_(1+n)) dx."""

    return poch_loginv_1_rhs(p.replace(c=-1.0), convention)


def poch_loginv_4term_rhs(p: ParamSet, convention: Optional[Convention] = None) -> complex:
    """int (x^p - x^q)(x^s - 1) / (log x (b - x^v)_(1+n)) dx"""

    pp, q, s, v, b = p.p, p.q, p.s, p.v, p.b
    n = p.integer("n")

    def z(x):
        return eix(2.0 * (1.0 + x) * PI / v)

    total = KahanSum()
    for j in range(n + 1):
        with term("poch-loginv-4term", j):
            bj = b + j
            u = clog(bj) / (2j * PI)
            bracket = (
                cpow(bj, pp / v) * phi(z(pp), 1, u)
                - cpow(bj, q / v) * phi(z(q), 1, u)
                - cpow(bj, (pp + s) / v) * phi(z(pp + s), 1, u)
                + cpow(bj, (q + s) / v) * phi(z(q + s), 1, u)
            )
            weight = eix(j * PI) * cpow(bj, -1.0 + 1.0 / v) * math.comb(n, j) / math.factorial(n)
            total.add(weight * bracket)
    return total.value


# -- polylog reductions with a = (-b/c)^(-1/v)


def _reduction_arg(b, c, v):
    return cpow(-b / c, -1.0 / v)


def poly_ex1_rhs(p: ParamSet, convention: Optional[Convention] = None) -> complex:
    """int x^(m-1) log^k((-b/c)^(-1/v) x) / (b + c x^v)_(1+n) dx"""

    b, c, v, m, k = p.b, p.c, p.v, p.m, p.k
    n = p.integer("n")
    z = eix(TWO_PI * m / v)
    shared = cpow(TWO_PI, 1.0 + k) * cpow(1j / v, k - 1.0) / (v * v * math.factorial(n))
    arg = _reduction_arg(b, c, v)

    total = KahanSum()
    for j in range(1, n + 1):
        with term("poly-ex1", j):
            u = shift(v, arg * cpow(c, -1.0 / v) * cpow(b + j, 1.0 / v))
            scale = (-1) ** j * cpow(c, -m / v) * eix(m * PI / v) * cpow(b + j, -1.0 + m / v) * math.comb(n, j)
            total.add(shared * scale * phi(z, -k, u))
    with term("poly-ex1", 0):
        total.add(shared * cpow(b, -1.0 + m / v) * cpow(c, -m / v) * eix(m * PI / v) * special.polylog(-k, z))
    return total.value


def poly_ex2_rhs(p: ParamSet, convention: Optional[Convention] = None) -> complex:
    """int (x^s - x^m) log^k((-b/c)^(-1/v) x) / (b + c x^v)_(1+n) dx"""

    b, c, v, m, s, k = p.b, p.c, p.v, p.m, p.s, p.k
    n = p.integer("n")
    zm = eix(2.0 * (1.0 + m) * PI / v)
    zs = eix(TWO_PI * (1.0 + s) / v)
    shared = cpow(c, -(2.0 + m + s) / v) * cpow(TWO_PI, 1.0 + k) * cpow(1j / v, 1.0 + k)
    arg = _reduction_arg(b, c, v)
    cm = cpow(c, (1.0 + m) / v)
    cs = cpow(c, (1.0 + s) / v)

    total = KahanSum()
    for j in range(1, n + 1):
        with term("poly-ex2", j):
            u = shift(v, arg * cpow(c, -1.0 / v) * cpow(b + j, 1.0 / v))
            bracket = cs * eix((1.0 + m) * PI / v) * cpow(b + j, (1.0 + m) / v) * phi(zm, -k, u)
            bracket -= cm * eix(PI * (1.0 + s) / v) * cpow(b + j, (1.0 + s) / v) * phi(zs, -k, u)
            total.add(shared * (-1) ** j * math.comb(n, j) * bracket / ((b + j) * math.factorial(n)))
    with term("poly-ex2", 0):
        tail = cpow(b, (1.0 + m) / v) * cs * eix((1.0 + m) * PI / v) * special.polylog(-k, zm)
        tail -= cpow(b, (1.0 + s) / v) * cm * eix(PI * (1.0 + s) / v) * special.polylog(-k, zs)
    total.add(shared * tail / (b * math.factorial(n)))
    return total.value


def _half_shift(j: int) -> complex:
    return shift(1.0, -1.0 - j)


def _below_shift(j: int) -> complex:
    """Shift for log(-(1+j)) taken as log(1+j) - i pi, the side the path passes below the poles."""
    return shift_log(1.0, math.log(1.0 + j) - 1j * PI)


def poly_ex2_case1_rhs(p: ParamSet, convention: Optional[Convention] = None) -> complex:
    """int (1/sqrt(x) - sqrt(x)) / ((1 - x)(2 - x) log x) dx"""

    with term("poly-ex2-case1", 1):
        return -phi(-1.0, 1, _below_shift(1)) / math.sqrt(2.0) + 2j * PI


def poly_ex2_case2_rhs(p: ParamSet, convention: Optional[Convention] = None) -> complex:
    """int (1/sqrt(x) - sqrt(x)) / (log x (1 - x)_(1+n)) dx"""

    n = p.integer("n")
    total = KahanSum()
    # j = 0 limit of the sum
    total.add(2j * PI / math.factorial(n))
    for j in range(1, n + 1):
        with term("poly-ex2-case2", j):
            value = phi(-1.0, 1, _below_shift(j))
            inner = -math.sqrt(1.0 + j) * value + (1.0 + j) ** 1.5 * value
            total.add(binom_weight(n, j) * inner / (1.0 + j))
    return total.value


def poly_ex2_case3_rhs(p: ParamSet, convention: Optional[Convention] = None) -> complex:
    """int (1/sqrt(x) - sqrt(x)) / (log(2x) (1 - 2x)_(1+n)) dx"""

    n = p.integer("n")
    root2 = math.sqrt(2.0)
    total = KahanSum()
    total.add(math.log(2.0) / (2.0 * root2 * math.factorial(n)))
    for j in range(1, n + 1):
        with term("poly-ex2-case3", j):
            value = phi(-1.0, 1, _half_shift(j))
            inner = -2.0 * root2 * math.sqrt(1.0 + j) * value + root2 * (1.0 + j) ** 1.5 * value
            total.add(binom_weight(n, j) * inner / (4.0 * (1.0 + j)))
    return total.value


def poch_malm_ex1_rhs(p: ParamSet, convention: Optional[Convention] = None) -> complex:
    """int (x^s - x^m) log(log x) / (log x (b + c x^v)_(1+n)) dx"""

    m, s, v, b, c = p.m, p.s, p.v, p.b, p.c
    n = p.integer("n")
    zm = eix(2.0 * (1.0 + m) * PI / v)
    zs = eix(TWO_PI * (1.0 + s) / v)
    log_2ipi = clog(2j * PI / v)

    total = KahanSum()
    for j in range(n + 1):
        with term("poch-malm-ex1", j):
            w = shift(v, cpow(c, -1.0 / v) * cpow(b + j, 1.0 / v))
            m_part = cpow(c, -m / v) * eix(PI * (1.0 + m - 1.5 * v) / v) * cpow(b + j, m / v)
            m_part *= phi(zm, 1, w) * log_2ipi - phi_ds(zm, 1, w)
            s_part = cpow(c, -s / v) * eix(PI * (1.0 + s - 1.5 * v) / v) * cpow(b + j, s / v)
            s_part *= -phi(zs, 1, w) * log_2ipi + phi_ds(zs, 1, w)
            scale = 1j * cpow(c, -1.0 / v) * cpow(b + j, -1.0 + 1.0 / v)
            total.add(-binom_weight(n, j) * scale * (m_part + s_part))
    return total.value


def poch_malm_ex1_case_rhs(p: ParamSet, convention: Optional[Convention] = None) -> complex:
    """int (1/sqrt(x) - sqrt(x)) log(log x) / (log x (1 - x)_(1+n)) dx"""

    n = p.integer("n")
    log_2ipi = clog(2j * PI)
    total = KahanSum()
    for j in range(n + 1):
        with term("poch-malm-ex1-case", j):
            u = _half_shift(j)
            value, slope = phi(-1.0, 1, u), phi_ds(-1.0, 1, u)
            root = math.sqrt(1.0 + j)
            inner = -1j * root * (value * log_2ipi - slope) - 1j * (-value * log_2ipi + slope) / root
            total.add(1j * binom_weight(n, j) * inner)
    return total.value
