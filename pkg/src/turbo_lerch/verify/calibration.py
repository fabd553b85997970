"""
Calibrations that fix conventions the closed forms leave open: the sign
convention of the Stirling numbers in the power-log master identity, and the
side of the real axis a deformed path takes around real poles.
"""

from dataclasses import dataclass, field
from typing import Dict, List, Optional

from turbo_lerch.catalog import IdentityInstance
from turbo_lerch.core.combinat import Convention
from turbo_lerch.core.errors import NonConvergenceError, TurboLerchError
from turbo_lerch.core.quad import QuadratureSpec, Side, integrate_semi_infinite
from turbo_lerch.identities.integrands import build_integrand
from turbo_lerch.identities.params import ParamSet
from turbo_lerch.identities.registry import example_rhs, lhs_integrand
from turbo_lerch.identities.theorems import thm2_rhs
from turbo_lerch.utils.log import get_logger

logger = get_logger(__name__)

MATCH_REL_TOL = 1e-6

# At n = 1 both conventions agree (S_1^(1) = 1, S_1^(0) = 0); n = 2 separates them.
STIRLING_POINTS = (
    ParamSet(n=2, v=2, b=1, m=0.5, k=0, a=1),
    ParamSet(n=1, v=2, b=1, m=0.5, k=0, a=1),
)


def _rel(lhs: complex, rhs: complex) -> float:
    return abs(lhs - rhs) / max(abs(rhs), 1e-300)


@dataclass
class StirlingPoint:
    params: ParamSet
    lhs: complex
    rhs: Dict[Convention, complex]

    def rel_err(self, convention: Convention) -> float:
        return _rel(self.lhs, self.rhs[convention])

    def to_json(self) -> Dict[str, object]:

        return {
            "params": self.params.to_json(),
            "lhs": {"re": self.lhs.real, "im": self.lhs.imag},
            "rel_err": {c.value: self.rel_err(c) for c in Convention},
        }


@dataclass
class StirlingCalibration:
    convention: Optional[Convention]
    points: List[StirlingPoint] = field(default_factory=list)

    def to_json(self) -> Dict[str, object]:

        return {
            "convention": self.convention.value if self.convention else None,
            "points": [p.to_json() for p in self.points],
        }


def calibrate_stirling(spec: QuadratureSpec = QuadratureSpec()) -> StirlingCalibration:
    """
    Integrates the power-log integrand at the calibration points and keeps the
    convention whose right side matches at the first (separating) point.
    """
    points = []
    for params in STIRLING_POINTS:
        integrand = build_integrand("power-logk", params)
        lhs = integrate_semi_infinite(integrand, integrand.quadrature_spec(spec)).value
        rhs = {c: thm2_rhs(params, c) for c in Convention}
        points.append(StirlingPoint(params, lhs, rhs))

    deciding = points[0]
    matches = [c for c in Convention if deciding.rel_err(c) <= MATCH_REL_TOL]
    chosen = min(matches, key=deciding.rel_err) if matches else None
    if chosen is None:
        logger.warning("No Stirling convention reproduces the quadrature value")
    else:
        logger.debug(f"Stirling convention calibrated to {chosen.value}")
    return StirlingCalibration(chosen, points)


@dataclass
class DeformationCalibration:
    id: str
    rhs: Optional[complex]
    lhs: Dict[Side, Optional[complex]] = field(default_factory=dict)
    reasons: Dict[Side, str] = field(default_factory=dict)

    @property
    def matching(self) -> List[Side]:

        if self.rhs is None:
            return []
        return [s for s, z in self.lhs.items() if z is not None and _rel(z, self.rhs) <= MATCH_REL_TOL]

    def to_json(self) -> Dict[str, object]:

        def pair(z):
            return None if z is None else {"re": z.real, "im": z.imag}

        return {
            "id": self.id,
            "rhs": pair(self.rhs),
            "lhs": {s.value: pair(z) for s, z in self.lhs.items()},
            "matching": [s.value for s in self.matching],
            "reasons": {s.value: r for s, r in self.reasons.items()},
        }


def calibrate_deformation(
    entry: IdentityInstance,
    spec: QuadratureSpec = QuadratureSpec(),
    convention: Optional[Convention] = None,
) -> DeformationCalibration:
    """Left side of `entry` at its defaults along every path side, against its right side."""

    params = entry.default_params
    try:
        rhs = example_rhs(entry.id, params, convention) * entry.erratum_multiplier
    except TurboLerchError as exc:
        return DeformationCalibration(entry.id, None, reasons={Side.NONE: f"rhs: {exc}"})

    result = DeformationCalibration(entry.id, rhs)
    if entry.kind == "series":
        result.reasons[Side.NONE] = "series entry has no integration path"
        return result

    for side in (Side.ABOVE, Side.BELOW, Side.NONE):
        try:
            integrand = lhs_integrand(entry.id, params, side)
            result.lhs[side] = integrate_semi_infinite(integrand, integrand.quadrature_spec(spec)).value
        except NonConvergenceError as exc:
            result.lhs[side] = None
            result.reasons[side] = f"nonconvergent: {exc}"
        except TurboLerchError as exc:
            result.lhs[side] = None
            result.reasons[side] = f"{type(exc).__name__}: {exc}"

    logger.debug(f"{entry.id}: sides matching the right side: {[s.value for s in result.matching]}")
    return result
