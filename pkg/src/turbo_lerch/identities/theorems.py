"""
Finite-series right-hand sides of the two master identities.

thm1: int_0^inf x^(m-1) log^k(ax) / (b + c x^v)_(1+n) dx
thm2: int_0^inf x^(m-1) log^k(ax) / (1 + b x^v)^(n+1) dx

Both are sums of Hurwitz-Lerch zeta values Phi(z, -k(+l), u) with z on the unit
circle and u = (pi - i v log(.)) / (2 pi). The k-derivatives feed every
log(log x) identity.
"""

import cmath
import math
from contextlib import contextmanager
from typing import Optional

from turbo_lerch.core.combinat import (
    Convention,
    pochhammer,
    pochhammer_dx,
    stirling1,
)
from turbo_lerch.core.errors import (
    DivergenceError,
    DomainError,
    NonConvergenceError,
    NonFiniteError,
    PoleError,
    TermError,
    UnsupportedRegimeError,
)
from turbo_lerch.core.lerch import LerchArgs, lerch_phi, lerch_phi_ds
from turbo_lerch.core.special import KahanSum, cexp, clog, cpow
from turbo_lerch.identities.params import ParamSet

PI = math.pi
TWO_PI = 2.0 * math.pi

DEFAULT_CONVENTION = Convention.SIGNED

_TERM_ERRORS = (
    DivergenceError,
    UnsupportedRegimeError,
    NonConvergenceError,
    PoleError,
    DomainError,
    NonFiniteError,
)


@contextmanager
def term(label: str, *index):
    """Attaches the summation index to errors raised inside one term."""

    try:
        yield
    except _TERM_ERRORS as exc:
        raise TermError(label, index if len(index) > 1 else index[0], exc) from exc


def phi(z, s, a) -> complex:
    return lerch_phi(LerchArgs(z, s, a))


def phi_ds(z, s, a) -> complex:
    return lerch_phi_ds(LerchArgs(z, s, a))


def eix(x) -> complex:
    """e^(i x)."""
    return cexp(1j * complex(x))


def shift(v, arg) -> complex:
    """(pi - i v log(arg)) / (2 pi), the Phi shift shared by every identity."""
    return shift_log(v, clog(arg))


def shift_log(v, log_arg) -> complex:
    """The same shift from an already chosen branch of log(arg)."""
    return (PI - 1j * complex(v) * complex(log_arg)) / TWO_PI


def cot(w) -> complex:
    return 1.0 / cmath.tan(complex(w))


def csc(w) -> complex:
    return 1.0 / cmath.sin(complex(w))


def log_2pi_i_over(v) -> complex:
    """log(2 pi) + log(i/v); equals log(2 i pi / v) for Re(v) > 0."""
    return clog(TWO_PI) + clog(1j / complex(v))


def stirling_derivative_sum(l: int, x, convention: Convention = DEFAULT_CONVENTION) -> complex:
    """
    sum_{p=1}^{l} (-1)^(l+p) x^(p-1) p S_l^(p) with 0^0 = 1.
    Under the signed convention this is d/dx (x)_l.
    """
    x = complex(x)
    acc = 0j
    for p in range(1, l + 1):
        acc += (-1) ** (l + p) * cpow(x, p - 1) * p * stirling1(l, p, convention)
    return acc


def _ints(p: ParamSet, *names: str):
    return tuple(p.integer(name) for name in names)


def thm1_rhs(p: ParamSet, convention: Optional[Convention] = None, dk: bool = False) -> complex:
    """
    sum_j (-1)^j c^(-3/2-e) e^(i pi e) (b+j)^(1/2+e) (2 pi)^(1+k) (i/v)^(2+k) v C(n,j)/n!
          * Phi(-e^(2 i pi e), -k, (pi - i v log(a c^(-1/v) (b+j)^(1/v)))/(2 pi)),
    e = (m - 3v/2)/v. With dk=True returns the k-derivative.
    """
    m, v, b, c, k, a = p.m, p.v, p.b, p.c, p.k, p.a
    (n,) = _ints(p, "n")
    e = (m - 1.5 * v) / v
    z = -eix(2.0 * PI * e)
    weight_log = log_2pi_i_over(v)

    total = KahanSum()
    for j in range(n + 1):
        with term("thm1", j):
            coeff = (
                (-1) ** j
                * cpow(c, -1.5 - e)
                * eix(PI * e)
                * cpow(b + j, 0.5 + e)
                * cpow(TWO_PI, 1.0 + k)
                * cpow(1j / v, 2.0 + k)
                * v
                * math.comb(n, j)
                / math.factorial(n)
            )
            u = shift(v, a * cpow(c, -1.0 / v) * cpow(b + j, 1.0 / v))
            if dk:
                total.add(coeff * (weight_log * phi(z, -k, u) - phi_ds(z, -k, u)))
            else:
                total.add(coeff * phi(z, -k, u))
    return total.value


def thm1_rhs_dk(p: ParamSet, convention: Optional[Convention] = None) -> complex:
    return thm1_rhs(p, convention, dk=True)


def thm2_rhs(p: ParamSet, convention: Optional[Convention] = None, dk: bool = False) -> complex:
    """
    sum_j sum_l (1+k-l)_l (-1)^(-j) b^(-m/v) e^(i pi (m - (1/2+n) v)/v) (2 pi)^(1+k-l)
        (1 - m/v)^(j-l) (-1/v)^l (i/v)^(k-l) C(j,l) / (v n!)
        * Phi(e^(2 i pi (m - n v)/v), -k+l, (pi - i v log(a b^(-1/v)))/(2 pi)) S_n^(j)
    """
    convention = Convention(convention or DEFAULT_CONVENTION)
    m, v, b, k, a = p.m, p.v, p.b, p.k, p.a
    (n,) = _ints(p, "n")

    z = eix(TWO_PI * (m - n * v) / v)
    u = shift(v, a * cpow(b, -1.0 / v))
    front = cpow(b, -m / v) * eix(PI * (m - (0.5 + n) * v) / v) / (v * math.factorial(n))
    weight_log = log_2pi_i_over(v)

    total = KahanSum()
    for j in range(n + 1):
        s_nj = stirling1(n, j, convention)
        if s_nj == 0:
            continue
        for l in range(j + 1):
            with term("thm2", j, l):
                poch = pochhammer(1.0 + k - l, l)
                dpoch = pochhammer_dx(1.0 + k - l, l) if dk else 0j
                if poch == 0 and dpoch == 0:
                    continue
                weight = (
                    cpow(-1, -j)
                    * cpow(TWO_PI, 1.0 + k - l)
                    * cpow(1.0 - m / v, j - l)
                    * cpow(-1.0 / v, l)
                    * cpow(1j / v, k - l)
                    * math.comb(j, l)
                )
                value = phi(z, -k + l, u)
                if not dk:
                    total.add(front * s_nj * weight * poch * value)
                    continue
                inner = dpoch * value
                if poch != 0:
                    inner += poch * (weight_log * value - phi_ds(z, -k + l, u))
                total.add(front * s_nj * weight * inner)
    return total.value


def thm2_rhs_dk(p: ParamSet, convention: Optional[Convention] = None) -> complex:
    return thm2_rhs(p, convention, dk=True)
