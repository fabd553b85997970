"""
Generalised Malmsten integrals: log(log x) against Pochhammer and power
denominators, their m/s difference forms and the closed-form special cases
(Catalan's constant, hypergeometric and Gamma values).
"""

import cmath
import math
from typing import Optional

from turbo_lerch.core import special
from turbo_lerch.core.combinat import Convention, pochhammer, stirling1
from turbo_lerch.core.special import KahanSum, clog, cpow
from turbo_lerch.identities.derived import malm_general_rhs
from turbo_lerch.identities.params import ParamSet
from turbo_lerch.identities.theorems import (
    DEFAULT_CONVENTION,
    PI,
    TWO_PI,
    csc,
    eix,
    phi,
    phi_ds,
    shift,
    stirling_derivative_sum,
    term,
)


def malm_poch_rhs(p: ParamSet, convention: Optional[Convention] = None) -> complex:
    """int x^(m-1) log(log x) / (b + c x^v)_(1+n) dx, the k-derivative of thm1 at k = 0, a = 1."""

    return malm_general_rhs(p, convention)


def malm_poch1_rhs(p: ParamSet, convention: Optional[Convention] = None) -> complex:
    """int (x^s - x^m) log(log x) / (b + c x^v)_(1+n) dx"""

    m, s, v, b, c = p.m, p.s, p.v, p.b, p.c
    n = p.integer("n")
    log_2ipi = clog(2j * PI / v)
    zm = eix(TWO_PI * (1.0 + m) / v)
    zs = eix(TWO_PI * (1.0 + s) / v)

    total = KahanSum()
    for j in range(n + 1):
        with term("malm-poch1", j):
            w = shift(v, cpow(c, -1.0 / v) * cpow(b + j, 1.0 / v))
            m_part = cpow(c, -(1.0 + m) / v) * cpow(b + j, (1.0 + m) / v)
            m_part *= -1j * csc((1.0 + m) * PI / v) * log_2ipi + 2.0 * eix((1.0 + m) * PI / v) * phi_ds(zm, 0, w)
            s_part = 1j * cpow(c, -(1.0 + s) / v) * cpow(b + j, (1.0 + s) / v)
            s_part *= csc(PI * (1.0 + s) / v) * log_2ipi + 2j * eix(PI * (1.0 + s) / v) * phi_ds(zs, 0, w)
            front = -1j * (-1) ** j * PI * math.comb(n, j) / ((b + j) * v * math.factorial(n))
            total.add(front * (m_part + s_part))
    return total.value


def malm_poch1_sqrt_rhs(p: ParamSet, convention: Optional[Convention] = None) -> complex:
    """int (1/sqrt(x) - sqrt(x)) log(log x) / (1 - x)_(1+n) dx"""

    n = p.integer("n")
    log_2ipi = clog(2j * PI)
    total = KahanSum()
    for j in range(n + 1):
        with term("malm-poch1-sqrt", j):
            d = phi_ds(-1.0, 0, shift(1.0, -1.0 - j))
            inner = cpow(1 + j, 0.5) * (log_2ipi - 2.0 * d)
            inner += 1j * cpow(1 + j, 1.5) * (1j * log_2ipi - 2j * d)
            total.add(1j * (-1) ** j * PI * math.comb(n, j) / ((1 + j) * math.factorial(n)) * inner)
    return total.value


def _loglog_power_sum(m, v, b, a, n: int, k0: int, convention: Convention, label: str) -> complex:
    """
    The k-derivative of the power-denominator series at k = k0 written with the
    Stirling form of d/dx (x)_l; k0 = 0 gives the log(log(ax)) integral, k0 = -1
    the log(log(ax))/log(ax) one.
    """
    z = eix(TWO_PI * m / v)
    u = shift(v, a * cpow(b, -1.0 / v))
    log_2ipi = clog(2j * PI / v)
    front = cpow(b, -m / v) * eix(PI * (m - (0.5 + n) * v) / v) / (v * math.factorial(n))

    total = KahanSum()
    for j in range(n + 1):
        s_nj = stirling1(n, j, convention)
        if s_nj == 0:
            continue
        for l in range(j + 1):
            with term(label, j, l):
                x = 1.0 + k0 - l
                poch = pochhammer(x, l)
                weight = (
                    cpow(-1, -j)
                    * cpow(TWO_PI, 1.0 + k0 - l)
                    * cpow(1.0 - m / v, j - l)
                    * cpow(-1.0 / v, l)
                    * cpow(1j / v, k0 - l)
                    * math.comb(j, l)
                )
                inner = phi(z, l - k0, u) * (log_2ipi * poch + stirling_derivative_sum(l, x, convention))
                if poch != 0:
                    inner -= poch * phi_ds(z, l - k0, u)
                total.add(front * weight * s_nj * inner)
    return total.value


def malm1_rhs(p: ParamSet, convention: Optional[Convention] = None) -> complex:
    """int x^(m-1) log(log(a x)) / (1 + b x^v)^(n+1) dx"""

    convention = Convention(convention or DEFAULT_CONVENTION)
    return _loglog_power_sum(p.m, p.v, p.b, p.a, p.integer("n"), 0, convention, "malm1")


def _kolbig_loglog(m, n: int, convention: Convention) -> complex:
    """One half of the (x^(s-1) - x^(m-1)) / (1 - x)^(n+1) difference, with 0^0 = 1."""

    z = eix(TWO_PI * m)
    log_2ipi = clog(2j * PI)
    total = KahanSum()
    for j in range(n + 1):
        s_nj = stirling1(n, j, convention)
        if s_nj == 0:
            continue
        for l in range(j + 1):
            with term("malm1-diff", j, l):
                poch = pochhammer(1.0 - l, l)
                weight = (
                    cpow(-1, -j + l - m)
                    * cpow(1j, -l)
                    * eix((-0.5 + m - n) * PI)
                    * cpow(1.0 - m, j - l)
                    * cpow(TWO_PI, 1.0 - l)
                    * math.comb(j, l)
                )
                li = eix(-TWO_PI * m) * special.polylog(l, z)
                inner = li * (log_2ipi * poch + stirling_derivative_sum(l, 1.0 - l, convention))
                if poch != 0:
                    inner -= poch * z * phi_ds(z, l, 1.0)
                total.add(weight * s_nj * inner / math.factorial(n))
    return total.value


def malm1_diff_rhs(p: ParamSet, convention: Optional[Convention] = None) -> complex:
    """int (x^(s-1) - x^(m-1)) log(log x) / (1 - x)^(n+1) dx; the left side converges only for n = 0."""

    convention = Convention(convention or DEFAULT_CONVENTION)
    n = p.integer("n")
    return _kolbig_loglog(p.s, n, convention) - _kolbig_loglog(p.m, n, convention)


def malm_la_rhs(p: ParamSet, convention: Optional[Convention] = None) -> complex:
    """int x^(m-1) log(log(a x)) / ((1 + b x^v)^(n+1) log(a x)) dx"""

    convention = Convention(convention or DEFAULT_CONVENTION)
    return _loglog_power_sum(p.m, p.v, p.b, p.a, p.integer("n"), -1, convention, "malm-la")


def malm_la1_rhs(p: ParamSet, convention: Optional[Convention] = None) -> complex:
    """int (x^(s-1) - x^(m-1)) log(log(a x)) / ((1 + b x^v)^(n+1) log(a x)) dx"""

    convention = Convention(convention or DEFAULT_CONVENTION)
    n = p.integer("n")
    m_part = _loglog_power_sum(p.m, p.v, p.b, p.a, n, -1, convention, "malm-la1")
    s_part = _loglog_power_sum(p.s, p.v, p.b, p.a, n, -1, convention, "malm-la1")
    return -m_part + s_part


def malm1_ex_rhs(p: ParamSet, convention: Optional[Convention] = None) -> complex:
    """int log(log x) / (1 + x^3)^n dx"""

    convention = Convention(convention or DEFAULT_CONVENTION)
    n = p.integer("n")
    z = eix(TWO_PI / 3.0)
    log_2ipi = clog(2j * PI / 3.0)
    phase = eix((1.0 - 3.0 * (n - 0.5)) * PI / 3.0)

    total = KahanSum()
    for j in range(n):
        s_nj = stirling1(n - 1, j, convention)
        if s_nj == 0:
            continue
        for l in range(j + 1):
            with term("malm1-ex", j, l):
                poch = pochhammer(1.0 - l, l)
                weight = (
                    cpow(-1, -j + l)
                    * cpow(1j, -l)
                    * 2.0 ** (1 + j - 2 * l)
                    * 3.0 ** (-1 - j + l)
                    * phase
                    * PI ** (1 - l)
                    * math.comb(j, l)
                )
                inner = phi(z, l, 0.5) * (log_2ipi * poch + stirling_derivative_sum(l, 1.0 - l, convention))
                if poch != 0:
                    inner -= poch * phi_ds(z, l, 0.5)
                total.add(weight * s_nj * inner / math.factorial(n - 1))
    return total.value


def malm1_ex_n3_rhs(p: ParamSet, convention: Optional[Convention] = None) -> complex:
    """int log(log x) / (1 + x^3) dx"""

    z = eix(TWO_PI / 3.0)
    with term("malm1-ex-n3", 0):
        inner = clog(2j * PI / 3.0) / (1.0 - z) - phi_ds(z, 0, 0.5)
    return 2.0 / 3.0 * eix(-PI / 6.0) * PI * inner


def _hyp2f1_half_one(z: complex) -> complex:
    """2F1(1/2, 1; 3/2; z) = atanh(sqrt z) / sqrt z."""

    r = cmath.sqrt(complex(z))
    return cmath.atanh(r) / r


def malm1_v4_rhs(p: ParamSet, convention: Optional[Convention] = None) -> complex:
    """int log(log x) / (1 + x^4)^2 dx"""

    with term("malm1-v4", 0):
        d = phi_ds(1j, 0, 0.5)
    value = 3j * PI * PI + (8 + 8j) * _hyp2f1_half_one(1j)
    value += 6.0 * PI * (math.log(PI / 2.0) - (1 - 1j) * d)
    return value / (16.0 * math.sqrt(2.0))


def malm1_v2_n3_catalan_rhs(p: ParamSet, convention: Optional[Convention] = None) -> complex:
    """int log(log x) / (1 + x^2)^4 dx"""

    ratio = 2j * PI * special.gamma(-0.25) ** 2 / (9.0 * special.gamma(-0.75) ** 2)
    return 3.0 * special.catalan_constant() / (4.0 * PI) + PI / 96.0 * (22j + 15.0 * clog(ratio))


def _catalan_tail() -> complex:
    """1/2 log(i pi) - Phi'(-1, 0, 1/2)"""

    with term("malm1-catalan", 0):
        return 0.5 * clog(1j * PI) - phi_ds(-1.0, 0, 0.5)


def malm1_catalan_scaled_rhs(p: ParamSet, convention: Optional[Convention] = None) -> complex:
    """
    int log(log(a x)) / (1 + a^2 x^2)^3 dx for a = 2, 3, 4:
    C/(2 a pi) + i pi/(4 a) + 3 pi/(8 a) (1/2 log(i pi) - Phi'(-1, 0, 1/2)).
    """
    a = p.a
    c = special.catalan_constant()
    return c / (2.0 * a * PI) + 1j * PI / (4.0 * a) + 3.0 * PI / (8.0 * a) * _catalan_tail()


def malm1_catalan_v3_rhs(p: ParamSet, convention: Optional[Convention] = None) -> complex:
    """int sqrt(x) log(log(2 x)) / (1 + 8 x^3)^3 dx"""

    root2 = math.sqrt(2.0)
    c = special.catalan_constant()
    with term("malm1-catalan-v3", 0):
        tail = 0.5 * clog(2j * PI / 3.0) - phi_ds(-1.0, 0, 0.5)
    return c / (6.0 * root2 * PI) + 1j * PI / (12.0 * root2) + PI * tail / (8.0 * root2)
