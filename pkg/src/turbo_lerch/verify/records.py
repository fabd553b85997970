import math
from dataclasses import dataclass, field
from enum import Enum
from typing import Dict, List, Mapping, Optional, Tuple

import psutil

from turbo_lerch.core.quad import QuadratureSpec
from turbo_lerch.identities.params import ParamSet

REPORT_SCHEMA_VERSION = 1


class Status(str, Enum):
    PASS = "pass"
    FAIL = "fail"
    SKIPPED = "skipped-unsupported-regime"
    NONCONVERGENT = "lhs-nonconvergent"


class ReportFormat(str, Enum):
    JSON = "json"
    CSV = "csv"


def _pair(z: Optional[complex]) -> Optional[Dict[str, float]]:
    return None if z is None else {"re": z.real, "im": z.imag}


@dataclass
class VerificationRecord:
    """
    One left side against one right side. `reason` is set for every status
    other than pass/fail and names what stopped the comparison.
    """

    id: str
    params: ParamSet
    status: Status
    lhs: Optional[complex] = None
    rhs: Optional[complex] = None
    abs_err: float = math.nan
    rel_err: float = math.nan
    evaluations: int = 0
    wall_time: float = 0.0
    reason: str = ""
    kind: str = "integral"
    expected: str = "pass"

    @property
    def unexpected(self) -> bool:
        return self.status.value != self.expected

    def to_json(self, timing: bool = True) -> Dict[str, object]:

        out: Dict[str, object] = {
            "id": self.id,
            "kind": self.kind,
            "params": self.params.to_json(),
            "status": self.status.value,
            "lhs": _pair(self.lhs),
            "rhs": _pair(self.rhs),
            "abs_err": None if math.isnan(self.abs_err) else self.abs_err,
            "rel_err": None if math.isnan(self.rel_err) else self.rel_err,
            "evaluations": self.evaluations,
        }
        if self.reason:
            out["reason"] = self.reason
        if self.expected != "pass":
            out["expected"] = self.expected
        if timing:
            out["wall_time"] = self.wall_time
        return out


def compare(lhs: complex, rhs: complex, rel_tol: float, abs_tol: float) -> Tuple[float, float, Status]:
    """abs/rel error of lhs against rhs and the pass/fail verdict."""

    abs_err = abs(lhs - rhs)
    scale = abs(rhs)
    rel_err = abs_err / scale if scale > 0 else abs_err
    ok = abs_err <= max(abs_tol, rel_tol * scale)
    return abs_err, rel_err, Status.PASS if ok else Status.FAIL


@dataclass(frozen=True)
class RunConfig:
    """Tolerances, sweep size and reporting for one verification run."""

    rel_tol: float = 1e-6
    abs_tol: float = 1e-9
    overrides: Mapping[str, Tuple[float, float]] = field(default_factory=dict)
    draws: int = 20
    seed: int = 42
    jobs: int = 1
    report_format: ReportFormat = ReportFormat.JSON
    quadrature: QuadratureSpec = field(default_factory=QuadratureSpec)
    entries: Tuple[str, ...] = ()
    # most top-level skipped records a passing run may carry; None disables the gate
    max_skips: Optional[int] = None
    series_cap: Optional[int] = None

    def __post_init__(self):

        if self.rel_tol <= 0 or self.abs_tol <= 0:
            raise ValueError("tolerances must be positive")
        if self.draws < 0:
            raise ValueError("draw count cannot be negative")
        if self.jobs < 1:
            raise ValueError("jobs must be at least 1")
        if self.max_skips is not None and self.max_skips < 0:
            raise ValueError("max_skips cannot be negative")
        if self.series_cap is not None and self.series_cap < 1:
            raise ValueError("series_cap must be positive")
        for entry_id, (rel, absolute) in self.overrides.items():
            if rel <= 0 or absolute <= 0:
                raise ValueError(f"override tolerances for '{entry_id}' must be positive")
        object.__setattr__(self, "report_format", ReportFormat(self.report_format))
        object.__setattr__(self, "entries", tuple(self.entries))

    def tolerances(self, entry_id: str) -> Tuple[float, float]:
        return self.overrides.get(entry_id, (self.rel_tol, self.abs_tol))

    def to_json(self) -> Dict[str, object]:
        """Config echoed into reports; `jobs` is left out so reports agree across parallelism."""

        return {
            "rel_tol": self.rel_tol,
            "abs_tol": self.abs_tol,
            "overrides": {k: list(v) for k, v in sorted(self.overrides.items())},
            "draws": self.draws,
            "seed": self.seed,
            "format": self.report_format.value,
            "quadrature": {
                "rule": self.quadrature.rule,
                "rel_tol": self.quadrature.rel_tol,
                "abs_tol": self.quadrature.abs_tol,
                "max_depth": self.quadrature.max_refinement_depth,
            },
            "entries": list(self.entries),
            "max_skips": self.max_skips,
            "series_cap": self.series_cap,
        }

    @classmethod
    def from_settings(cls, settings, **changes) -> "RunConfig":
        """Builds a config from a Settings object; `changes` win over it."""

        jobs = settings.value("verify/jobs", type=int)
        if jobs <= 0:
            jobs = psutil.cpu_count(logical=False) or 1
        max_skips = settings.value("verify/max_skips", type=int)

        values = dict(
            rel_tol=settings.value("verify/rel_tol", type=float),
            abs_tol=settings.value("verify/abs_tol", type=float),
            draws=settings.value("verify/draws", type=int),
            seed=settings.value("verify/seed", type=int),
            jobs=jobs,
            report_format=settings.value("verify/format", type=str),
            quadrature=settings.quadrature_spec(),
            max_skips=max_skips if max_skips >= 0 else None,
            series_cap=settings.value("lerch/series_cap", type=int),
        )
        values.update({k: v for k, v in changes.items() if v is not None})
        return cls(**values)


@dataclass
class SweepSummary:
    id: str
    records: List[VerificationRecord]

    def counts(self) -> Dict[str, object]:
        return summarize(self.records)

    @property
    def pass_rate(self) -> float:

        judged = [r for r in self.records if r.status in (Status.PASS, Status.FAIL)]
        if not judged:
            return math.nan
        return sum(r.status is Status.PASS for r in judged) / len(judged)

    @property
    def max_rel_err(self) -> Optional[float]:

        errors = [r.rel_err for r in self.records if not math.isnan(r.rel_err)]
        return max(errors) if errors else None

    def to_json(self, timing: bool = True) -> Dict[str, object]:

        return {
            "id": self.id,
            "draws": len(self.records),
            "summary": self.counts(),
            "pass_rate": None if math.isnan(self.pass_rate) else self.pass_rate,
            "max_rel_err": self.max_rel_err,
            "records": [r.to_json(timing) for r in self.records],
        }


def summarize(records: List[VerificationRecord]) -> Dict[str, object]:

    counts = {"pass": 0, "fail": 0, "skipped": 0, "nonconvergent": 0}
    for record in records:
        if record.status is Status.PASS:
            counts["pass"] += 1
        elif record.status is Status.FAIL:
            counts["fail"] += 1
        elif record.status is Status.SKIPPED:
            counts["skipped"] += 1
        else:
            counts["nonconvergent"] += 1

    errors = [r.rel_err for r in records if r.status in (Status.PASS, Status.FAIL) and not math.isnan(r.rel_err)]
    counts["max_rel_err"] = max(errors) if errors else None
    return counts
