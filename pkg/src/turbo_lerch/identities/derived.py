"""
Right-hand sides of the identities derived from the two master formulas:
log(log^2 a - log^2 x) integrals, their a-derivatives, the e^pi specialisations,
the reciprocal log^2 forms and the polygamma evaluations.
"""

import math
from typing import Optional

from turbo_lerch.core import special
from turbo_lerch.core.combinat import Convention, pochhammer, stirling1
from turbo_lerch.core.lerch import lerch_transformation_sides
from turbo_lerch.core.special import KahanSum, clog, cpow
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


def binom_weight(n: int, j: int) -> float:
    """(-1)^j C(n, j) / n!"""

    return (-1) ** j * math.comb(n, j) / math.factorial(n)


def eq1_rhs(p: ParamSet, convention: Optional[Convention] = None) -> complex:
    """int x^(m-1) log(log^2 a - log^2 x) / (b + c x^v)_(1+n) dx"""

    m, v, b, c, a = p.m, p.v, p.b, p.c, p.a
    n = p.integer("n")
    z = eix(TWO_PI * m / v)
    log_2ipi = clog(2j * PI / v)

    total = KahanSum()
    for j in range(n + 1):
        with term("eq1", j):
            scale = cpow(c, -m / v) * cpow(b + j, -1.0 + m / v) * math.comb(n, j) / (v * math.factorial(n))
            root = cpow(c, -1.0 / v) * cpow(b + j, 1.0 / v)
            bracket = (
                (-1j + cot(m * PI / v)) * log_2ipi
                + 1j * phi_ds(z, 0, shift(v, root / a))
                + 1j * phi_ds(z, 0, shift(v, a * root))
            )
            total.add(2.0 * eix(PI * (j + m / v)) * PI * scale * bracket)
            total.add(-1j * eix(j * PI) * PI * PI * csc(m * PI / v) * scale)
    return total.value


def _eq2_gamma_ratio(r: complex, a: complex) -> complex:

    lo = clog(r / a)
    hi = clog(a * r)
    num = special.gamma(0.75 - 1j * lo / TWO_PI) * special.gamma(0.75 - 1j * hi / TWO_PI)
    den = special.gamma((PI - 2j * lo) / (4.0 * PI)) * special.gamma((PI - 2j * hi) / (4.0 * PI))
    return 2j * PI * num / den


def eq2_rhs(p: ParamSet, convention: Optional[Convention] = None) -> complex:
    """int log(log^2 a - log^2 x) / ((x^2 - 1)/2)_(1+n) dx"""

    a = p.a
    n = p.integer("n")
    logs = KahanSum()
    plain = KahanSum()
    for j in range(n + 1):
        with term("eq2", j):
            r = cpow(2 * j - 1, 0.5)
            w = binom_weight(n, j) * math.factorial(n) / r
            logs.add(w * clog(_eq2_gamma_ratio(r, a)))
            plain.add(w)
    nf = math.factorial(n)
    return TWO_PI / nf * logs.value - PI * PI * 1j / nf * plain.value


def ex3_rhs(p: ParamSet, convention: Optional[Convention] = None) -> complex:
    """int log(pi^2 - log^2 x) / (1 - x^4) dx, the a = e^pi, n = 1 case of eq2."""

    coth = 1.0 / math.tanh(PI / 2.0)
    ratio = (
        special.gamma(0.75 - 0.5j)
        * special.gamma(0.75 + 0.5j)
        / (special.gamma(0.25 - 0.5j) * special.gamma(0.25 + 0.5j))
    )
    inner = 2.0 * cpow(PI, 1.0 + 1j) * cpow(coth, 1j) * ratio
    return 0.5 * PI * clog(inner)


def ex4_rhs(p: ParamSet, convention: Optional[Convention] = None) -> complex:
    """int log(pi^2 - log^2 x) / (1 - x^2) dx = i pi log(pi coth(pi/2))"""

    return 1j * PI * clog(PI / math.tanh(PI / 2.0))


def eq2_da_rhs(p: ParamSet, convention: Optional[Convention] = None) -> complex:
    """int 1 / ((log^2 a - log^2 x) ((x^2 - 1)/2)_(1+n)) dx"""

    a = p.a
    n = p.integer("n")
    la = clog(a)
    total = KahanSum()
    for j in range(n + 1):
        with term("eq2-da", j):
            r = cpow(2 * j - 1, 0.5)
            lo = clog(r / a)
            hi = clog(a * r)
            psi = (
                special.digamma_n(0, (PI - 2j * lo) / (4.0 * PI))
                - special.digamma_n(0, 0.75 - 1j * lo / TWO_PI)
                - special.digamma_n(0, (PI - 2j * hi) / (4.0 * PI))
                + special.digamma_n(0, 0.75 - 1j * hi / TWO_PI)
            )
            total.add(-1j * binom_weight(n, j) / (2.0 * r * la) * psi)
    return total.value


def malm_general_rhs(p: ParamSet, convention: Optional[Convention] = None) -> complex:
    """int x^(m-1) log(log x) / (b + c x^v)_(1+n) dx"""

    m, v, b, c = p.m, p.v, p.b, p.c
    n = p.integer("n")
    z = eix(TWO_PI * m / v)
    log_2ipi = clog(2j * PI / v)

    total = KahanSum()
    for j in range(n + 1):
        with term("malm-general", j):
            w = shift(v, cpow(c, -1.0 / v) * cpow(b + j, 1.0 / v))
            front = (
                2j
                * binom_weight(n, j)
                * cpow(c, -m / v)
                * eix(PI * m / v)
                * cpow(b + j, -1.0 + m / v)
                * PI
                / ((z - 1.0) * v)
            )
            total.add(front * (log_2ipi + (z - 1.0) * phi_ds(z, 0, w)))
    return total.value


def malm_b_neg1_rhs(p: ParamSet, convention: Optional[Convention] = None) -> complex:
    """int x^(m-1) log(log(a x)) / (x^v - 1)^2 dx"""

    m, v, a = p.m, p.v, p.a
    z = eix(TWO_PI * m / v)
    u = shift(v, cpow(-1, -1.0 / v) * a)
    with term("malm-b-neg1", 0):
        inner = (z - 1.0) * v * phi(z, 1, u) - 2j * PI * (m - v) * (
            clog(2j * PI / v) + (z - 1.0) * phi_ds(z, 0, u)
        )
    return cpow(-1, -m / v) * eix(PI * m / v) / ((z - 1.0) * v * v) * inner


def kolbig_rhs(p: ParamSet, convention: Optional[Convention] = None) -> complex:
    """int x^(m-1) log^k(a x) / (1 - x)^(n+1) dx"""

    convention = Convention(convention or DEFAULT_CONVENTION)
    m, k, a = p.m, p.k, p.a
    n = p.integer("n")
    z = eix(TWO_PI * (m - n))
    # log(-a) on the branch of the b = e^(i pi) prefactors
    u = shift_log(1.0, clog(a) - 1j * PI)
    front = eix((-0.5 + m - n) * PI) / math.factorial(n)

    total = KahanSum()
    for j in range(n + 1):
        s_nj = stirling1(n, j, convention)
        if s_nj == 0:
            continue
        for l in range(j + 1):
            with term("kolbig", j, l):
                poch = pochhammer(1.0 + k - l, l)
                if poch == 0:
                    continue
                weight = (
                    cpow(-1, -j + l - m)
                    * cpow(1j, k - l)
                    * cpow(1.0 - m, j - l)
                    * cpow(TWO_PI, 1.0 + k - l)
                    * math.comb(j, l)
                )
                total.add(front * weight * phi(z, -k + l, u) * poch * s_nj)
    return total.value


def lerch_transformation_lhs(p: ParamSet, convention: Optional[Convention] = None) -> complex:
    return lerch_transformation_sides(p.m, p.v, p.a, p.b, p.k)[0]


def lerch_transformation_rhs(p: ParamSet, convention: Optional[Convention] = None) -> complex:
    return lerch_transformation_sides(p.m, p.v, p.a, p.b, p.k)[1]


def _reciprocal_log_common(v: complex, j: int, l: int) -> complex:
    """(-1)^(-j+l) (-1/v)^l (i/v)^(-l) ((v-1)/v)^(j-l) C(j, l) l!"""

    return (
        cpow(-1, -j + l)
        * cpow(-1.0 / v, l)
        * cpow(1j / v, -l)
        * cpow((v - 1.0) / v, j - l)
        * math.comb(j, l)
        * math.factorial(l)
    )


def eq_log_a_rhs(p: ParamSet, convention: Optional[Convention] = None) -> complex:
    """int (1 + b x^v)^(-1-n) / (a^2 pi^2 - log^2 x) dx"""

    convention = Convention(convention or DEFAULT_CONVENTION)
    a, b, v = p.a, p.b, p.v
    n = p.integer("n")
    z = eix(-TWO_PI * (-1.0 + n * v) / v)
    lb = clog(cpow(b, -1.0 / v))
    u_plus = (PI + 1j * a * PI * v - 1j * v * lb) / TWO_PI
    u_minus = -1j * (PI * (1j + a * v) + v * lb) / TWO_PI
    front = -cpow(b, -1.0 / v) * eix(-PI * (-1.0 + n * v) / v) / (a * math.factorial(n))

    total = KahanSum()
    for j in range(n + 1):
        s_nj = stirling1(n, j, convention)
        if s_nj == 0:
            continue
        for l in range(j + 1):
            with term("eq-log-a", j, l):
                weight = _reciprocal_log_common(v, j, l) * cpow(TWO_PI, -1.0 - l)
                diff = -phi(z, 1 + l, u_plus) + phi(z, 1 + l, u_minus)
                total.add(front * weight * diff * s_nj)
    return total.value


def eq_log_a_da_rhs(p: ParamSet, convention: Optional[Convention] = None) -> complex:
    """int (1 + e^(i b pi) x^v)^(-1-n) / (log^2 x - a^2 pi^2)^2 dx"""

    convention = Convention(convention or DEFAULT_CONVENTION)
    a, b, v = p.a, p.b, p.v
    n = p.integer("n")
    z = eix(-TWO_PI * (-1.0 + n * v) / v)
    lo = (1.0 - b - 1j * a * v) / 2.0
    hi = (1.0 - b + 1j * a * v) / 2.0
    front = eix(-PI * (-1.0 + b + n * v) / v) / (a**3 * math.factorial(n))

    total = KahanSum()
    for j in range(n + 1):
        s_nj = stirling1(n, j, convention)
        if s_nj == 0:
            continue
        for l in range(j + 1):
            with term("eq-log-a-da", j, l):
                weight = _reciprocal_log_common(v, j, l) * cpow(TWO_PI, -3.0 - l)
                inner = (
                    -2.0 * phi(z, 1 + l, lo)
                    + 2.0 * phi(z, 1 + l, hi)
                    + 1j * a * (1 + l) * v * (phi(z, 2 + l, lo) + phi(z, 2 + l, hi))
                )
                total.add(front * weight * inner * s_nj)
    return total.value


def eq_diekama_rhs(p: ParamSet, convention: Optional[Convention] = None) -> complex:
    """int 1 / ((1 + x)^2 (a^2 + log^2 x)^2) dx"""

    a = p.a
    w = (a + PI) / TWO_PI
    return (TWO_PI * special.digamma_n(1, w) - a * special.digamma_n(2, w)) / (8.0 * a**3 * PI * PI)


def eq_diekama_zeta3_rhs(p: ParamSet, convention: Optional[Convention] = None) -> complex:
    """The a = pi value (pi^2 + 6 zeta(3)) / (24 pi^4)."""

    return complex((PI * PI + 6.0 * special.zeta3()) / (24.0 * PI**4))


def exercise_psi_rhs(p: ParamSet, convention: Optional[Convention] = None) -> complex:
    """int 1 / ((1 + e^(i b pi) x)^2 (a^2 pi^2 + log^2 x)^2) dx"""

    a, b = p.a, p.b
    lo = (1.0 + a - b) / 2.0
    hi = (1.0 + a + b) / 2.0
    inner = 2.0 * special.digamma_n(1, lo) + 2.0 * special.digamma_n(1, hi)
    inner -= a * (special.digamma_n(2, lo) + special.digamma_n(2, hi))
    return eix(-b * PI) / (16.0 * a**3 * PI**4) * inner


def exercise_zeta3_rhs(p: ParamSet, convention: Optional[Convention] = None) -> complex:
    """int log x / ((1 + e^(i b pi) x)^2 (a^2 pi^2 + log^2 x)^2) dx"""

    a, b = p.a, p.b
    diff = special.hurwitz_zeta(3, (1.0 + a - b) / 2.0) - special.hurwitz_zeta(3, (1.0 + a + b) / 2.0)
    return -1j * eix(-b * PI) * diff / (8.0 * a * PI**3)
