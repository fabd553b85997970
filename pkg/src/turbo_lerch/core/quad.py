"""
Complex-valued adaptive quadrature over (0, inf) and finite intervals.

The domain is cut at declared singularities (and always at x = 1), the tail
[c, inf) is mapped to (0, 1] by x = c/u, and every piece is integrated either by
tanh-sinh levels ("de") or by adaptive G7/K15 panels ("gk"). Principal-value
poles of order 1 and 2 are excised symmetrically and integrated as pair sums.
"""

import math
from dataclasses import dataclass, field, replace
from enum import Enum
from typing import Callable, Dict, List, Optional, Tuple

import numpy as np

from turbo_lerch.core.errors import (
    IntegrandError,
    NonConvergenceError,
    NonFiniteError,
    PoleOrderError,
)
from turbo_lerch.utils.log import get_logger

logger = get_logger(__name__)

Integrand = Callable[[float], complex]

_EPS = np.finfo(float).eps
_HUGE_X = 1e200
_ENDPOINT_REL = 1e-10

# inner end of a pole window's pair integral, relative to its half width
_PAIR_CUTOFF = 1e-4

_DE_T_MAX = 6.0
_DE_MAX_LEVEL = 12
_GK_MAX_PANELS = 4000

# G7/K15 abscissae and weights (QUADPACK qk15)
_XGK = np.array(
    [
        0.991455371120812639206854697526329,
        0.949107912342758524526189684047851,
        0.864864423359769072789712788640926,
        0.741531185599394439863864773280788,
        0.586087235467691130294144845693013,
        0.405845151377397166906606412076961,
        0.207784955007898467600689403773245,
        0.000000000000000000000000000000000,
    ]
)
_WGK = np.array(
    [
        0.022935322010529224963732008058970,
        0.063092092629978553290700663189204,
        0.104790010322250183839876322541518,
        0.140653259715525918745189590510238,
        0.169004726639267902826583426598550,
        0.190350578064785409913256402421014,
        0.204432940075298892414161999234649,
        0.209482141084727828012999174891714,
    ]
)
# Gauss weights on the odd Kronrod abscissae (0.949.., 0.741.., 0.405.., 0)
_WG = np.array(
    [
        0.129484966168869693270611432679082,
        0.279705391489276667901467771423780,
        0.381830050505118944950369775488975,
        0.417959183673469387755102040816327,
    ]
)


class Side(str, Enum):
    """Which side of a real pole the deformed path passes."""

    ABOVE = "above"
    BELOW = "below"
    NONE = "none"


@dataclass(frozen=True)
class PvPole:
    location: float
    order: int = 1
    side: Side = Side.NONE

    def __post_init__(self):

        if not (math.isfinite(self.location) and self.location > 0):
            raise ValueError(f"pole location must be a positive real, got {self.location}")
        if not isinstance(self.order, int) or self.order < 1:
            raise ValueError(f"pole order must be a positive integer, got {self.order!r}")
        object.__setattr__(self, "side", Side(self.side))


@dataclass(frozen=True)
class QuadratureSpec:
    """How to integrate: cut points, PV poles, tolerances and rule."""

    split_points: Tuple[float, ...] = ()
    pv_poles: Tuple[PvPole, ...] = ()
    rel_tol: float = 1e-10
    abs_tol: float = 1e-14
    max_refinement_depth: int = 30
    rule: str = "de"
    lower: float = 0.0
    upper: float = math.inf

    def __post_init__(self):

        splits = tuple(float(x) for x in self.split_points)
        if any(b <= a for a, b in zip(splits, splits[1:])):
            raise ValueError(f"split points must be strictly increasing: {splits}")
        if self.rel_tol <= 0 or self.abs_tol <= 0:
            raise ValueError("tolerances must be positive")
        if self.rule not in ("de", "gk"):
            raise ValueError(f"unknown quadrature rule '{self.rule}'")
        if not self.lower < self.upper:
            raise ValueError(f"empty domain [{self.lower}, {self.upper}]")
        object.__setattr__(self, "split_points", splits)
        object.__setattr__(self, "pv_poles", tuple(self.pv_poles))

    def with_pole(self, pole: PvPole) -> "QuadratureSpec":

        if any(p.location == pole.location for p in self.pv_poles):
            return self
        return replace(self, pv_poles=self.pv_poles + (pole,))

    def target(self, value: complex) -> float:
        return max(self.abs_tol, self.rel_tol * abs(value))


@dataclass
class QuadratureOutcome:
    value: complex
    error_estimate: float
    evaluations: int
    converged: bool
    rounds: int = 0

    def as_dict(self) -> Dict[str, object]:

        return {
            "re": self.value.real,
            "im": self.value.imag,
            "error_estimate": self.error_estimate,
            "evaluations": self.evaluations,
            "converged": self.converged,
            "rounds": self.rounds,
        }


class _Counter:
    """Counts integrand calls across all segments of one integration."""

    def __init__(self, f: Integrand):

        self.f = f
        self.calls = 0

    def __call__(self, x: float) -> complex:

        self.calls += 1
        return self.f(x)


class _Segment:
    """
    One piece of the domain in its own variable u on [a, b].
    `g(u)` is the (already mapped) integrand and `abscissa(u)` the original x.
    """

    def __init__(self, g, a: float, b: float, abscissa=None, label: str = ""):

        self.g = g
        self.a = a
        self.b = b
        self.abscissa = abscissa or (lambda u: u)
        self.label = label or f"[{a:g}, {b:g}]"
        self.value = 0j
        self.error = math.inf
        self.exhausted = False

    def _eval(self, u: float) -> complex:

        if u <= self.a or u >= self.b:
            return 0j
        try:
            y = complex(self.g(u))
            ok = math.isfinite(y.real) and math.isfinite(y.imag)
        except (ZeroDivisionError, OverflowError, NonFiniteError):
            ok = False
        if ok:
            return y

        x = self.abscissa(u)
        near = min(u - self.a, self.b - u) <= _ENDPOINT_REL * max(1.0, abs(self.a), abs(self.b))
        if near or abs(x) > _HUGE_X:
            return 0j
        raise IntegrandError(f"integrand is not finite at x = {x!r}", abscissa=x)

    def refine(self, target: float):
        raise NotImplementedError


class _TanhSinhSegment(_Segment):
    """Tanh-sinh levels; the step h halves with every refinement."""

    def __init__(self, g, a, b, abscissa=None, label=""):

        super().__init__(g, a, b, abscissa, label)
        self.half = 0.5 * (b - a)
        self.level = 0
        self.h = 1.0
        self._sum = 0j
        self._abs_sum = 0.0

        self._add_nodes(np.arange(-_DE_T_MAX, _DE_T_MAX + 0.5, 1.0))
        self.value = self._sum * self.h
        self.refine(0.0)

    def _add_nodes(self, ts: np.ndarray):

        u = 0.5 * math.pi * np.sinh(ts)
        e = np.exp(-2.0 * np.abs(u))
        # distance to the nearest endpoint, accurate near the ends
        dist = self.half * 2.0 * e / (1.0 + e)
        weights = self.half * 0.5 * math.pi * np.cosh(ts) * 4.0 * e / (1.0 + e) ** 2

        for t, d, w in zip(ts, dist, weights):
            if d <= 0.0 or w == 0.0:
                continue
            node = self.b - d if t > 0 else self.a + d
            if t == 0:
                node = self.a + self.half
            if node <= self.a or node >= self.b:
                continue
            y = self._eval(node)
            self._sum += w * y
            self._abs_sum += abs(w * y)

    def refine(self, target: float):

        if self.level >= _DE_MAX_LEVEL:
            self.exhausted = True
            return

        self.level += 1
        self.h *= 0.5
        n = int(round(_DE_T_MAX / self.h))
        odd = np.arange(-n + 1, n, 2, dtype=float) * self.h
        self._add_nodes(odd)

        previous = self.value
        self.value = self._sum * self.h
        floor = 50.0 * _EPS * self._abs_sum * self.h
        self.error = max(abs(self.value - previous), floor)


class _KronrodSegment(_Segment):
    """Adaptive G7/K15 panels, bisecting those over their share of the target."""

    def __init__(self, g, a, b, abscissa=None, label=""):

        super().__init__(g, a, b, abscissa, label)
        self.panels: List[Tuple[float, float, complex, float]] = [self._panel(a, b)]
        self._total()

    def _panel(self, lo: float, hi: float) -> Tuple[float, float, complex, float]:

        center = 0.5 * (lo + hi)
        half = 0.5 * (hi - lo)
        values = np.empty(15, dtype=complex)
        values[7] = self._eval(center)
        for j in range(7):
            dx = half * _XGK[j]
            values[j] = self._eval(center - dx)
            values[14 - j] = self._eval(center + dx)

        weights_k = np.concatenate([_WGK, _WGK[6::-1]])
        pairs = values[:7] + values[14:7:-1]
        kronrod = half * np.dot(weights_k, values)
        gauss = half * (_WG[3] * values[7] + np.dot(_WG[:3], pairs[1::2]))

        # QUADPACK error scaling
        mean = kronrod / (2.0 * half)
        resasc = half * np.dot(weights_k, np.abs(values - mean))
        err = abs(kronrod - gauss)
        if resasc > 0 and err > 0:
            err = resasc * min(1.0, (200.0 * err / resasc) ** 1.5)
        return lo, hi, complex(kronrod), max(err, 50.0 * _EPS * abs(kronrod))

    def _total(self):

        self.value = sum(p[2] for p in self.panels)
        self.error = sum(p[3] for p in self.panels)

    def refine(self, target: float):

        width = self.b - self.a
        worst = max(self.panels, key=lambda p: p[3])
        split = [p for p in self.panels if p[3] > target * (p[1] - p[0]) / width] or [worst]

        kept = [p for p in self.panels if p not in split]
        for panel in split:
            lo, hi = panel[0], panel[1]
            mid = 0.5 * (lo + hi)
            if not lo < mid < hi or len(kept) >= _GK_MAX_PANELS:
                self.exhausted = True
                kept.append(panel)
                continue
            kept.append(self._panel(lo, mid))
            kept.append(self._panel(mid, hi))
        self.panels = sorted(kept, key=lambda p: p[0])
        self._total()


def _make_segment(rule: str, g, a, b, abscissa=None, label="") -> _Segment:

    cls = _TanhSinhSegment if rule == "de" else _KronrodSegment
    return cls(g, a, b, abscissa, label)


def _richardson(r: Callable[[float], complex], delta: float, levels: int = 4) -> Tuple[complex, float]:
    """Limit of r(t) as t -> 0 for r(t) = c + O(t^2), from repeated halvings."""

    table = [complex(r(delta / 2**i)) for i in range(levels)]
    previous = table[-1]
    factor = 4.0
    for _ in range(levels - 1):
        previous = table[-1]
        table = [(factor * table[i + 1] - table[i]) / (factor - 1.0) for i in range(len(table) - 1)]
        factor *= 4.0
    return table[0], abs(table[0] - previous)


@dataclass
class _Plan:
    segments: List[_Segment] = field(default_factory=list)
    constant: complex = 0j
    constant_error: float = 0.0


def _window_half_width(p: float, pole_locs: List[float], spec: QuadratureSpec) -> float:

    neighbours = [spec.lower] + list(spec.split_points) + pole_locs + [1.0]
    if math.isfinite(spec.upper):
        neighbours.append(spec.upper)
    gaps = [abs(p - q) for q in neighbours if q != p and spec.lower <= q <= spec.upper]
    return 0.5 * min(gaps) if gaps else 0.5 * p


def _pole_window(f: Integrand, pole: PvPole, h: float, plan: _Plan):
    """
    Adds the excised window [p-h, p+h] of one pole to `plan`. The pair sum is
    integrated adaptively on [t0, h]; on [0, t0] it is replaced by an even
    quadratic through pair(t0) and pair(t0/2), since rounding in f(p +- t)
    grows like 1/t^order there.
    """
    p = pole.location
    delta = 1e-2 * h
    t0 = _PAIR_CUTOFF * h

    c1, c1_err = _richardson(lambda t: t * (f(p + t) - f(p - t)) / 2.0, delta)
    c2 = 0j
    if pole.order == 2:
        c2, c2_err = _richardson(lambda t: t * t * (f(p + t) + f(p - t)) / 2.0, delta)
        plan.constant += -2.0 * c2 / h
        plan.constant_error += 2.0 * c2_err / h

    def pair(t: float, c2=c2) -> complex:
        return f(p + t) + f(p - t) - 2.0 * c2 / (t * t)

    near, nearer = complex(pair(t0)), complex(pair(0.5 * t0))
    plan.constant += t0 * (near + 8.0 * nearer) / 9.0
    plan.constant_error += t0 * abs(near - nearer)

    plan.segments.append(
        _KronrodSegment(pair, t0, h, abscissa=lambda t: p + t, label=f"pv@{p:g}")
    )

    if pole.side is Side.BELOW:
        plan.constant += 1j * math.pi * c1
    elif pole.side is Side.ABOVE:
        plan.constant -= 1j * math.pi * c1
    if pole.side is not Side.NONE:
        plan.constant_error += math.pi * c1_err

    logger.debug(f"pole {p:g} order {pole.order} side {pole.side.value}: c1={c1} c2={c2}")


def _build_plan(f: Integrand, spec: QuadratureSpec) -> _Plan:

    for pole in spec.pv_poles:
        if pole.order > 2:
            raise PoleOrderError(f"principal value undefined for pole of order {pole.order}")

    plan = _Plan()
    lo, hi = spec.lower, spec.upper
    pole_locs = [pole.location for pole in spec.pv_poles if lo < pole.location < hi]

    # 1. Breakpoints, with each pole replaced by its window edges
    points = {lo, 1.0} | set(spec.split_points)
    if math.isfinite(hi):
        points.add(hi)
    windows = []
    for pole in spec.pv_poles:
        p = pole.location
        if not lo < p < hi:
            continue
        h = _window_half_width(p, pole_locs, spec)
        windows.append((p - h, p + h))
        points |= {p - h, p + h}
        _pole_window(f, pole, h, plan)
    points = sorted(x for x in points if lo <= x <= hi and x not in pole_locs)

    # 2. Regular segments between consecutive breakpoints
    for a, b in zip(points, points[1:]):
        if (a, b) in windows:
            continue
        plan.segments.append(_make_segment(spec.rule, f, a, b))

    # 3. Tail [c, inf) through x = c/u
    if math.isinf(hi):
        c = points[-1]

        def tail(u: float, c=c) -> complex:
            return f(c / u) * c / (u * u)

        plan.segments.append(
            _make_segment(spec.rule, tail, 0.0, 1.0, abscissa=lambda u, c=c: c / u, label=f"[{c:g}, inf)")
        )

    return plan


def refine_until(f: Integrand, spec: QuadratureSpec, budget: int) -> QuadratureOutcome:
    """
    Refines the integral of `f` round by round until the error estimate meets
    the tolerance of `spec` or `budget` rounds are spent. The reported error
    never increases between rounds: the best outcome seen so far is kept.
    """
    if budget < 1:
        raise ValueError("refinement budget must be at least one round")

    counter = _Counter(f)
    plan = _build_plan(counter, spec)
    best: Optional[QuadratureOutcome] = None

    for rounds in range(budget + 1):
        value = plan.constant + sum(s.value for s in plan.segments)
        error = plan.constant_error + sum(s.error for s in plan.segments)
        target = spec.target(value)

        if best is None or error <= best.error_estimate:
            best = QuadratureOutcome(value, error, counter.calls, error <= target, rounds)
        else:
            best.evaluations = counter.calls
            best.rounds = rounds
        logger.debug(f"round {rounds}: value={value} error={error:.3g} target={target:.3g}")

        if error <= target:
            return best
        if rounds == budget:
            break

        share = target / max(1, len(plan.segments))
        active = [s for s in plan.segments if not s.exhausted and s.error > share]
        if not active:
            break
        for segment in active:
            segment.refine(share)

    raise NonConvergenceError(
        f"quadrature did not reach tolerance (error {best.error_estimate:.3g})",
        partial=best,
        diagnostics={
            "segments": {s.label: s.error for s in plan.segments},
            "evaluations": counter.calls,
        },
    )


def integrate_semi_infinite(f: Integrand, spec: QuadratureSpec = QuadratureSpec()) -> QuadratureOutcome:
    """Integral of `f` over [spec.lower, spec.upper), PV at every declared pole."""

    return refine_until(f, spec, spec.max_refinement_depth)


def integrate_pv(f: Integrand, pole: PvPole, spec: QuadratureSpec = QuadratureSpec()) -> QuadratureOutcome:
    """Principal value (order 1) or finite part (order 2) of `f` about `pole`."""

    if pole.order > 2:
        raise PoleOrderError(f"principal value undefined for pole of order {pole.order}")
    return integrate_semi_infinite(f, spec.with_pole(pole))
