"""
Complex special functions on a single principal branch.

Every public function accepts Python numbers (int, float, complex) and returns
a finite complex value or raises one of the errors in `turbo_lerch.core.errors`.
"""

import cmath
import math
from fractions import Fraction
from functools import lru_cache
from typing import List, Union

from turbo_lerch.core.errors import DomainError, NonFiniteError, PoleError

Number = Union[int, float, complex]

CATALAN = 0.915965594177219015054603514932384110774
ZETA3 = 1.202056903159594285399738161511449990765

# Lanczos approximation, g = 7, nine coefficients
_LANCZOS_G = 7.0
_LANCZOS_COEFFS = (
    0.99999999999980993,
    676.5203681218851,
    -1259.1392167224028,
    771.32342877765313,
    -176.61502916214059,
    12.507343278686905,
    -0.13857109526572012,
    9.9843695780195716e-6,
    1.5056327351493116e-7,
)
_SQRT_2PI = math.sqrt(2.0 * math.pi)

_PSI_SHIFT = 15.0
_ZETA_CORRECTIONS = 12


class KahanSum:
    """Compensated accumulator for complex terms."""

    def __init__(self, start: Number = 0.0):

        self.total = complex(start)
        self._carry = 0j

    def add(self, term: Number) -> "KahanSum":

        y = complex(term) - self._carry
        t = self.total + y
        self._carry = (t - self.total) - y
        self.total = t
        return self

    def __iadd__(self, term: Number) -> "KahanSum":
        return self.add(term)

    @property
    def value(self) -> complex:
        return self.total


def ensure_finite(value: Number, what: str = "value") -> complex:
    """Returns `value` as complex, raising NonFiniteError on NaN or infinity."""

    z = complex(value)
    if not (math.isfinite(z.real) and math.isfinite(z.imag)):
        raise NonFiniteError(f"{what} is not finite: {z}")
    return z


def is_nonpositive_integer(z: Number) -> bool:

    z = complex(z)
    return z.imag == 0.0 and z.real <= 0.0 and z.real == math.floor(z.real)


def clog(z: Number) -> complex:
    """
    Principal logarithm with imaginary part in (-pi, pi].
    A negative zero imaginary part is treated as +0, so clog(-1) is +i*pi.
    """
    z = ensure_finite(z, "clog argument")
    if z == 0:
        raise DomainError("clog(0) is undefined")
    if z.imag == 0.0:
        z = complex(z.real, 0.0)
    return cmath.log(z)


def cpow(z: Number, w: Number) -> complex:
    """z**w = exp(w * clog(z)), with 0**0 = 1 and 0**w = 0 for Re(w) > 0."""

    z = ensure_finite(z, "cpow base")
    w = ensure_finite(w, "cpow exponent")

    if z == 0:
        if w == 0:
            return 1.0 + 0.0j
        if w.real > 0:
            return 0j
        raise DomainError(f"0 raised to {w} is undefined")

    # small integer exponents by repeated multiplication
    if w.imag == 0.0 and w.real == math.floor(w.real) and abs(w.real) <= 64:
        n = int(w.real)
        if z.imag == 0.0:
            z = complex(z.real, 0.0)
        try:
            return ensure_finite(z**n, "cpow result")
        except (ZeroDivisionError, OverflowError) as exc:
            raise NonFiniteError(f"cpow overflow at {z}**{n}") from exc

    try:
        value = cmath.exp(w * clog(z))
    except OverflowError as exc:
        raise NonFiniteError(f"cpow overflow at {z}**{w}") from exc
    return ensure_finite(value, "cpow result")


def gamma(z: Number) -> complex:
    """Gamma function; Lanczos for Re(z) >= 1/2, reflection below."""

    z = ensure_finite(z, "gamma argument")
    if is_nonpositive_integer(z):
        raise PoleError(f"gamma has a pole at {z.real:g}", location=z)

    if z.real < 0.5:
        try:
            s = cmath.sin(math.pi * z)
        except OverflowError as exc:
            raise NonFiniteError(f"gamma underflow at {z}") from exc
        if s == 0:
            raise PoleError(f"gamma has a pole near {z}", location=z)
        return ensure_finite(math.pi / (s * gamma(1.0 - z)), "gamma")

    z -= 1.0
    x = complex(_LANCZOS_COEFFS[0])
    for i, c in enumerate(_LANCZOS_COEFFS[1:], start=1):
        x += c / (z + i)
    t = z + _LANCZOS_G + 0.5
    try:
        value = _SQRT_2PI * cmath.exp((z + 0.5) * cmath.log(t) - t) * x
    except OverflowError as exc:
        raise NonFiniteError(f"gamma overflow at {z + 1.0}") from exc
    return ensure_finite(value, "gamma")


@lru_cache(maxsize=None)
def _bernoulli_numbers(n_max: int) -> List[Fraction]:
    """B_0..B_{n_max} by the Akiyama-Tanigawa transform (B_1 = +1/2)."""

    a = [Fraction(0)] * (n_max + 1)
    out = []
    for m in range(n_max + 1):
        a[m] = Fraction(1, m + 1)
        for j in range(m, 0, -1):
            a[j - 1] = j * (a[j - 1] - a[j])
        out.append(a[0])
    return out


def bernoulli_even(k: int) -> float:
    """B_{2k} as a float."""

    return float(_bernoulli_numbers(2 * k)[2 * k])


def digamma_n(n: int, z: Number) -> complex:
    """
    Polygamma function psi^(n)(z), n >= 0 (n = 0 is the digamma function).

    The argument is shifted upward with psi^(n)(z) = psi^(n)(z+1) - (-1)^n n!/z^(n+1)
    until Re(z) >= 15, then the asymptotic expansion in Bernoulli numbers is summed.
    """
    if not isinstance(n, int) or n < 0:
        raise DomainError(f"polygamma order must be a nonnegative integer, got {n!r}")

    z = ensure_finite(z, "polygamma argument")
    if is_nonpositive_integer(z):
        raise PoleError(f"polygamma has a pole at {z.real:g}", location=z)

    sign = -1.0 if n % 2 else 1.0
    n_fact = math.factorial(n)

    # 1. Upward shift
    acc = KahanSum()
    while z.real < _PSI_SHIFT:
        acc.add(-sign * n_fact / z ** (n + 1))
        z += 1.0

    # 2. Asymptotic tail
    tail = KahanSum()
    if n == 0:
        tail.add(cmath.log(z) - 0.5 / z)
        z2 = z * z
        power = z2
        for k in range(1, 30):
            term = bernoulli_even(k) / (2 * k * power)
            tail.add(-term)
            if abs(term) < 1e-18 * abs(tail.value):
                break
            power *= z2
    else:
        tail.add(math.factorial(n - 1) / z**n + n_fact / (2.0 * z ** (n + 1)))
        z2 = z * z
        power = z**n * z2
        for k in range(1, 30):
            coeff = math.factorial(2 * k + n - 1) / math.factorial(2 * k)
            term = bernoulli_even(k) * coeff / power
            tail.add(term)
            if abs(term) < 1e-18 * abs(tail.value):
                break
            power *= z2
        tail = KahanSum(-sign * tail.value)

    return ensure_finite(acc.value + tail.value, "polygamma")


def hurwitz_zeta(s: Number, a: Number) -> complex:
    """
    Hurwitz zeta function zeta(s, a) = sum_{k>=0} (k+a)^(-s) by Euler-Maclaurin.

    Arguments with Re(a) <= 0 are shifted with zeta(s, a) = a^(-s) + zeta(s, a+1)
    unless a hits a nonpositive integer.
    """
    s = ensure_finite(s, "zeta exponent")
    a = ensure_finite(a, "zeta shift")
    if s == 1:
        raise PoleError("hurwitz_zeta has a pole at s = 1", location=s)
    if is_nonpositive_integer(a):
        raise DomainError(f"hurwitz_zeta undefined for a = {a.real:g}")

    head = KahanSum()
    while a.real <= 0:
        head.add(cpow(a, -s))
        a += 1.0

    # 1. Direct part
    n_terms = 15 + int(math.ceil(abs(s)))
    for k in range(n_terms):
        head.add(cpow(k + a, -s))

    # 2. Integral and boundary terms
    big = n_terms + a
    head.add(cpow(big, 1.0 - s) / (s - 1.0))
    head.add(0.5 * cpow(big, -s))

    # 3. Bernoulli corrections: B_2j/(2j)! * (s)_{2j-1} * big^(-s-2j+1)
    rising = s
    power = cpow(big, -s - 1.0)
    inv_big2 = 1.0 / (big * big)
    for j in range(1, _ZETA_CORRECTIONS + 1):
        term = bernoulli_even(j) / math.factorial(2 * j) * rising * power
        head.add(term)
        rising *= (s + 2 * j - 1) * (s + 2 * j)
        power *= inv_big2

    return ensure_finite(head.value, "hurwitz_zeta")


def polylog(s: Number, z: Number) -> complex:
    """Li_s(z) = z * Phi(z, s, 1)."""

    s = ensure_finite(s, "polylog order")
    z = ensure_finite(z, "polylog argument")

    if z == 0:
        return 0j
    if abs(z - 1.0) < 1e-12:
        if s.real > 1:
            return hurwitz_zeta(s, 1.0)
        raise DomainError(f"polylog diverges at z = 1 for Re(s) = {s.real:g}")

    from turbo_lerch.core.lerch import LerchArgs, lerch_phi

    return z * lerch_phi(LerchArgs(z, s, 1.0))


def catalan_constant() -> float:
    return CATALAN


def zeta3() -> float:
    return ZETA3


def cexp(w: Number) -> complex:
    """exp(w), with overflow reported as NonFiniteError."""

    try:
        return ensure_finite(cmath.exp(complex(w)), "exp")
    except OverflowError as exc:
        raise NonFiniteError(f"exp overflow at {w}") from exc
