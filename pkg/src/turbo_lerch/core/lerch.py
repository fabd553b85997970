"""
Hurwitz-Lerch zeta function Phi(z, s, a) = sum_{k>=0} z^k (k+a)^(-s) and its
first derivative in s.

Regimes
-------
zero             z = 0, Phi = a^(-s)
hurwitz          z = 1 and Re(s) > 1, Phi = zeta(s, a)
negative-integer s = -n, Phi = R_n(z), a rational function of z
series           |z| <= 0.99, compensated direct summation
continuation     0.99 < |z| <= 1 + 1e-9, Laplace-type integral in t
"""

import math
from dataclasses import dataclass
from enum import Enum
from functools import lru_cache
from typing import Optional, Tuple

from numpy.polynomial import Polynomial

from turbo_lerch.core import special
from turbo_lerch.core.errors import (
    DivergenceError,
    DomainError,
    NonConvergenceError,
    UnsupportedRegimeError,
)
from turbo_lerch.core.quad import QuadratureSpec, integrate_semi_infinite
from turbo_lerch.core.special import KahanSum, cexp, clog, cpow, ensure_finite
from turbo_lerch.utils.log import get_logger

logger = get_logger(__name__)

SERIES_RADIUS = 0.99
CIRCLE_SLACK = 1e-9
Z_ONE_TOL = 1e-12
SERIES_CAP = 1_000_000
SERIES_REL = 1e-16

_CONTINUATION_SPEC = QuadratureSpec(rel_tol=1e-11, abs_tol=1e-15, max_refinement_depth=12)
_ACCEPT_REL = 1e-8

_series_cap = SERIES_CAP


def set_series_cap(cap: int):
    """Term limit for the direct series when no explicit cap is passed."""

    global _series_cap
    if cap < 1:
        raise ValueError(f"series cap must be positive, got {cap}")
    _series_cap = int(cap)


class Regime(str, Enum):
    ZERO = "zero"
    HURWITZ = "hurwitz"
    NEGATIVE_INTEGER = "negative-integer"
    SERIES = "series"
    CONTINUATION = "continuation"


@dataclass(frozen=True)
class LerchArgs:
    """The (z, s, a) triple of Phi with its evaluation regime."""

    z: complex
    s: complex
    a: complex

    def __post_init__(self):

        object.__setattr__(self, "z", ensure_finite(self.z, "Phi argument z"))
        object.__setattr__(self, "s", ensure_finite(self.s, "Phi argument s"))
        object.__setattr__(self, "a", ensure_finite(self.a, "Phi argument a"))

    @property
    def regime(self) -> Regime:
        return classify(self)

    def shifted(self, **changes) -> "LerchArgs":

        values = {"z": self.z, "s": self.s, "a": self.a}
        values.update(changes)
        return LerchArgs(**values)


def classify(args: LerchArgs) -> Regime:
    """Maps a triple to exactly one algorithm, or raises."""

    z, s = args.z, args.s
    if z == 0:
        return Regime.ZERO
    if abs(z - 1.0) < Z_ONE_TOL:
        if s.real > 1:
            return Regime.HURWITZ
        raise DivergenceError(f"Phi(1, s, a) diverges for Re(s) = {s.real:g} <= 1")
    if special.is_nonpositive_integer(s):
        return Regime.NEGATIVE_INTEGER
    if abs(z) <= SERIES_RADIUS:
        return Regime.SERIES
    if abs(z) <= 1.0 + CIRCLE_SLACK and not (z.imag == 0 and z.real > 1):
        return Regime.CONTINUATION
    raise UnsupportedRegimeError(f"no evaluation regime for |z| = {abs(z):.6g} with s = {s}")


@lru_cache(maxsize=256)
def _kernel_numerator(n: int, a: complex) -> Polynomial:
    """
    N_n(w) with R_n(w) = N_n(w)/(1-w)^(n+1), R_0 = 1/(1-w) and
    R_{j+1} = a R_j + w R_j', i.e.
    N_{j+1} = a N_j (1-w) + w N_j' (1-w) + (j+1) w N_j.
    """
    w = Polynomial([0.0, 1.0])
    one_minus = Polynomial([1.0, -1.0])
    num = Polynomial([1.0 + 0.0j])
    for j in range(n):
        num = a * num * one_minus + w * num.deriv() * one_minus + (j + 1) * w * num
    return num


def kernel(n: int, a: complex, w: complex) -> complex:
    """R_n(w) = (w d/dw + a)^n 1/(1-w)."""

    num = _kernel_numerator(n, complex(a))
    return complex(num(w)) / (1.0 - w) ** (n + 1)


def _phi_series(args: LerchArgs, cap: int, derivative: bool = False) -> complex:

    z, s, a = args.z, args.s, args.a
    total = KahanSum()
    zk = 1.0 + 0.0j
    small = 0

    for k in range(cap):
        base = k + a
        if base == 0 and derivative:
            # 0^(-s) log 0 -> 0 for Re(s) < 0
            if s.real >= 0:
                raise DomainError(f"d/ds Phi undefined with a zero base at k = {k}")
            term = 0j
        else:
            term = zk * cpow(base, -s)
            if derivative:
                term *= -clog(base)
        total.add(term)

        if abs(term) < SERIES_REL * abs(total.value):
            small += 1
            if small >= 3:
                return total.value
        else:
            small = 0
        zk *= z
        if zk == 0:
            return total.value

    raise NonConvergenceError(
        f"Phi series did not converge in {cap} terms",
        partial=total.value,
        diagnostics={"z": z, "s": s, "a": a, "terms": cap},
    )


def _lift(args: LerchArgs, derivative: bool) -> Tuple[complex, complex, LerchArgs]:
    """
    Head of Phi(z, s, a) = sum_{k<M} z^k (k+a)^(-s) + z^M Phi(z, s, a+M) with
    M chosen so that Re(a+M) >= 1. Returns (head, z^M, shifted args).
    """
    z, s, a = args.z, args.s, args.a
    shift = max(0, int(math.ceil(1.0 - a.real)))
    head = KahanSum()
    zk = 1.0 + 0.0j
    for k in range(shift):
        base = k + a
        if derivative:
            if base == 0:
                if s.real >= 0:
                    raise DomainError(f"d/ds Phi undefined with a zero base at k = {k}")
            else:
                head.add(-zk * clog(base) * cpow(base, -s))
        else:
            head.add(zk * cpow(base, -s))
        zk *= z
    return head.value, zk, args.shifted(a=a + shift)


def _continuation(args: LerchArgs, derivative: bool) -> complex:
    """
    Phi(z, s, a) = 1/Gamma(s+N) int_0^inf t^(s+N-1) e^(-a t) R_N(z e^(-t)) dt,
    N = max(0, ceil(1 - Re s)); needs Re(a) >= 1 (see `_lift`).
    """
    z, s, a = args.z, args.s, args.a
    order = max(0, int(math.ceil(1.0 - s.real)))
    sigma = s + order
    num = _kernel_numerator(order, a)

    def integrand(t: float) -> complex:

        w = z * math.exp(-t)
        value = cpow(t, sigma - 1.0) * cexp(-a * t) * complex(num(w)) / (1.0 - w) ** (order + 1)
        return value * math.log(t) if derivative else value

    try:
        outcome = integrate_semi_infinite(integrand, _CONTINUATION_SPEC)
    except NonConvergenceError as exc:
        partial = exc.partial
        if partial is None or partial.error_estimate > _ACCEPT_REL * abs(partial.value):
            raise
        outcome = partial

    scale = 1.0 / special.gamma(sigma)
    logger.debug(f"continuation N={order} sigma={sigma} evals={outcome.evaluations} err={outcome.error_estimate:.3g}")
    if not derivative:
        return outcome.value * scale

    phi = _continuation(args, derivative=False)
    return outcome.value * scale - special.digamma_n(0, sigma) * phi


def lerch_phi(args: LerchArgs, series_cap: Optional[int] = None) -> complex:
    """Phi(z, s, a) in the regime `classify` selects."""

    series_cap = series_cap or _series_cap
    regime = classify(args)
    z, s, a = args.z, args.s, args.a
    logger.debug(f"Phi({z}, {s}, {a}) regime {regime.value}")

    if regime is Regime.ZERO:
        return cpow(a, -s)
    if regime is Regime.HURWITZ:
        return special.hurwitz_zeta(s, a)
    if regime is Regime.NEGATIVE_INTEGER:
        return ensure_finite(kernel(int(round(-s.real)), a, z), "Phi")
    if regime is Regime.SERIES:
        return ensure_finite(_phi_series(args, series_cap), "Phi")

    head, zm, lifted = _lift(args, derivative=False)
    return ensure_finite(head + zm * _continuation(lifted, derivative=False), "Phi")


def lerch_phi_ds(args: LerchArgs, series_cap: Optional[int] = None) -> complex:
    """d/ds Phi(z, s, a), the termwise-differentiated series or its continuation."""

    series_cap = series_cap or _series_cap
    z, s, a = args.z, args.s, args.a
    if z == 0:
        return -clog(a) * cpow(a, -s)
    if abs(z - 1.0) < Z_ONE_TOL:
        if s.real <= 1:
            raise DivergenceError(f"Phi(1, s, a) diverges for Re(s) = {s.real:g} <= 1")
        raise UnsupportedRegimeError("d/ds Phi at z = 1 is not implemented")

    if abs(z) <= SERIES_RADIUS:
        return ensure_finite(_phi_series(args, series_cap, derivative=True), "Phi'")
    if abs(z) > 1.0 + CIRCLE_SLACK or (z.imag == 0 and z.real > 1):
        raise UnsupportedRegimeError(f"no derivative regime for |z| = {abs(z):.6g}")

    head, zm, lifted = _lift(args, derivative=True)
    return ensure_finite(head + zm * _continuation(lifted, derivative=True), "Phi'")


def lerch_transformation_sides(m, v, a, b, k) -> Tuple[complex, complex]:
    """
    Both sides of the duplication-type transformation
      Phi(e^(i pi m/v), -k, 1/2 - i v log(a b^(-1/v))/pi)
        = 2^k e^(i pi m/(2v)) b^(-m/v) [ (-ib)^(m/v) Phi(e^(2 i pi m/v), -k, u_+)
                                        + (ib)^(m/v) Phi(e^(2 i pi m/v), -k, u_-) ]
    with u_(+/-) = (pi - i v log(a (+/- i b)^(-1/v)))/(2 pi).
    """
    m, v, a, b, k = (complex(x) for x in (m, v, a, b, k))
    if v.real <= 1:
        raise DomainError(f"transformation requires Re(v) > 1, got v = {v}")

    ratio = m / v
    lhs = lerch_phi(
        LerchArgs(
            cexp(1j * math.pi * ratio),
            -k,
            0.5 - 1j * v * clog(a * cpow(b, -1.0 / v)) / math.pi,
        )
    )

    z2 = cexp(2j * math.pi * ratio)

    def shift(base: complex) -> complex:
        return (math.pi - 1j * v * clog(a * cpow(base, -1.0 / v))) / (2.0 * math.pi)

    plus = cpow(-1j * b, ratio) * lerch_phi(LerchArgs(z2, -k, shift(1j * b)))
    minus = cpow(1j * b, ratio) * lerch_phi(LerchArgs(z2, -k, shift(-1j * b)))
    rhs = cpow(2.0, k) * cexp(0.5j * math.pi * ratio) * cpow(b, -ratio) * (plus + minus)
    return lhs, rhs


def lerch_transformation_check(m, v, a, b, k) -> float:
    """|LHS - RHS| of the transformation; expected <= 1e-8 (1 + |LHS|)."""

    lhs, rhs = lerch_transformation_sides(m, v, a, b, k)
    return abs(lhs - rhs)

