"""
Verification runner: integrates each catalog entry's left side, evaluates its
right side, compares them and assembles a report. Numeric errors never escape
from here; they become record statuses.
"""

import csv
import io
import json
import math
import time
import zlib
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path
from typing import Callable, Dict, List, Optional, Union

import numpy as np
from tqdm import tqdm

from turbo_lerch.catalog import CatalogFile, IdentityInstance, bind, load_catalog
from turbo_lerch.core.combinat import Convention
from turbo_lerch.core.errors import (
    CatalogError,
    DivergenceError,
    DomainError,
    IntegrandError,
    NonConvergenceError,
    NonFiniteError,
    PoleError,
    PoleOrderError,
    TermError,
    TurboLerchError,
    UnsupportedRegimeError,
    ValidityError,
)
from turbo_lerch.core.lerch import set_series_cap
from turbo_lerch.core.quad import integrate_semi_infinite
from turbo_lerch.identities.params import ParamSet, check_validity
from turbo_lerch.identities.registry import example_cross_check, example_rhs, example_second, lhs_integrand
from turbo_lerch.utils.log import get_logger
from turbo_lerch.verify.records import (
    REPORT_SCHEMA_VERSION,
    ReportFormat,
    RunConfig,
    Status,
    SweepSummary,
    VerificationRecord,
    compare,
    summarize,
)

logger = get_logger(__name__)

ProgressCallback = Callable[[int, int], None]

# Errors that mean "this right side cannot be evaluated here", not "it is wrong",
# with the reason prefix each one is reported under.
_RHS_SKIP = (
    (UnsupportedRegimeError, "rhs-unsupported-regime"),
    (DivergenceError, "rhs-divergent"),
    (TermError, "rhs-term"),
    (PoleError, "rhs-pole"),
    (DomainError, "rhs-domain"),
    (NonConvergenceError, "rhs-nonconvergent"),
)
_LHS_FAILURES = (IntegrandError, PoleError, PoleOrderError, NonFiniteError, DomainError)

MAX_SAMPLER_ATTEMPTS = 100
# how far inside every continuous validity boundary a random draw must land
SAMPLER_MARGIN = 0.1


def _finite(z: complex) -> bool:
    return math.isfinite(z.real) and math.isfinite(z.imag)


def _skip_reason(exc: TurboLerchError) -> str:

    for kind, prefix in _RHS_SKIP:
        if isinstance(exc, kind):
            return f"{prefix}: {exc}"
    return f"rhs-error: {type(exc).__name__}: {exc}"


def _error_reason(exc: Exception) -> str:
    return f"error: {type(exc).__name__}: {exc}"


def _cross_value(entry: IdentityInstance, params: ParamSet, convention) -> Optional[complex]:
    """The k-derivative form of the right side, when the entry has one and it evaluates."""

    try:
        value = example_cross_check(entry.id, params, convention)
    except TurboLerchError as exc:
        logger.debug(f"{entry.id}: no cross-check value ({type(exc).__name__}: {exc})")
        return None
    if value is None or not _finite(value):
        return None
    return value * entry.erratum_multiplier


def _evaluate_lhs(entry: IdentityInstance, params: ParamSet, config: RunConfig, convention):
    """(value, evaluations) of the left side; series entries use their second evaluator."""

    if entry.kind == "series":
        return example_second(entry.id, params, convention), 0

    spec = lhs_integrand(entry.id, params, entry.side)
    outcome = integrate_semi_infinite(spec, spec.quadrature_spec(config.quadrature))
    return outcome.value, outcome.evaluations


def verify_identity(
    entry: IdentityInstance,
    params: Optional[ParamSet] = None,
    config: RunConfig = RunConfig(),
    convention: Optional[Convention] = None,
) -> VerificationRecord:
    """
    Compares left and right side of `entry` at `params` (entry defaults when
    omitted). The right side is multiplied by the entry's erratum multiplier.
    Exceptions from outside the package's own error family turn into a fail
    record carrying the exception type.
    """
    started = time.perf_counter()
    params = entry.default_params if params is None else params
    record = VerificationRecord(entry.id, params, Status.SKIPPED, kind=entry.kind, expected=entry.expected)

    def done(status: Status, reason: str = "") -> VerificationRecord:

        record.status = status
        record.reason = reason
        record.wall_time = time.perf_counter() - started
        rel = "-" if math.isnan(record.rel_err) else f"{record.rel_err:.3g}"
        logger.info(f"{entry.id} {status.value} {rel}")
        return record

    # 1. Parameters
    try:
        check_validity(params, entry.validity)
    except ValidityError as exc:
        return done(Status.SKIPPED, f"invalid-params: {exc}")

    # 2. Right side
    try:
        rhs = example_rhs(entry.id, params, convention) * entry.erratum_multiplier
    except TurboLerchError as exc:
        return done(Status.SKIPPED, _skip_reason(exc))
    except Exception as exc:
        logger.warning(f"{entry.id}: right side raised {type(exc).__name__}: {exc}")
        return done(Status.FAIL, _error_reason(exc))
    if not _finite(rhs):
        return done(Status.SKIPPED, "rhs-nonfinite: right side is not a finite number")
    record.rhs = rhs
    rel_tol, abs_tol = config.tolerances(entry.id)
    try:
        cross = _cross_value(entry, params, convention)
    except Exception as exc:
        logger.warning(f"{entry.id}: cross-check raised {type(exc).__name__}: {exc}")
        return done(Status.FAIL, _error_reason(exc))
    if cross is not None:
        _, cross_rel, cross_status = compare(cross, rhs, rel_tol, abs_tol)
        if cross_status is Status.FAIL:
            return done(Status.FAIL, f"cross-check: k-derivative form differs by rel_err {cross_rel:.3g}")

    # 3. Left side
    try:
        lhs, evaluations = _evaluate_lhs(entry, params, config, convention)
    except NonConvergenceError as exc:
        partial = getattr(exc.partial, "value", None)
        record.lhs = partial if isinstance(partial, complex) else None
        record.evaluations = getattr(exc.partial, "evaluations", 0) or 0
        return done(Status.NONCONVERGENT, f"lhs: {exc}")
    except _LHS_FAILURES as exc:
        return done(Status.NONCONVERGENT, f"lhs: {type(exc).__name__}: {exc}")
    except TurboLerchError as exc:
        return done(Status.SKIPPED, f"lhs: {type(exc).__name__}: {exc}")
    except Exception as exc:
        logger.warning(f"{entry.id}: left side raised {type(exc).__name__}: {exc}")
        return done(Status.FAIL, _error_reason(exc))
    record.lhs = lhs
    record.evaluations = evaluations
    if not _finite(lhs):
        return done(Status.NONCONVERGENT, "lhs: non-finite value")

    # 4. Compare
    record.abs_err, record.rel_err, status = compare(lhs, rhs, rel_tol, abs_tol)
    return done(status)


def sampler_rng(entry_id: str, seed: int) -> np.random.Generator:
    """Per-entry stream, so adding or removing entries never shifts another entry's draws."""

    return np.random.default_rng([seed, zlib.crc32(entry_id.encode("utf-8"))])


def draw_params(entry: IdentityInstance, rng: np.random.Generator, count: int) -> List[ParamSet]:
    """
    `count` parameter sets from the entry's sampler ranges, each at least
    SAMPLER_MARGIN inside the entry's validity region. Integer keys are drawn
    from [lo, hi] inclusive.
    """
    if not entry.sampler:
        raise CatalogError(f"entry '{entry.id}' has no parameter sampler", field="sampler")

    drawn: List[ParamSet] = []
    attempts = 0
    while len(drawn) < count:
        attempts += 1
        if attempts > MAX_SAMPLER_ATTEMPTS * max(count, 1):
            raise CatalogError(f"sampler of '{entry.id}' rarely lands in its validity region", field="sampler")

        values: Dict[str, object] = {}
        for key in sorted(entry.sampler):
            lo, hi = entry.sampler[key]
            if key in entry.integers:
                values[key] = int(rng.integers(int(lo), int(hi) + 1))
            else:
                values[key] = float(rng.uniform(lo, hi))
        try:
            params = bind(entry, values)
            check_validity(params, entry.validity, margin=SAMPLER_MARGIN)
        except ValidityError:
            continue
        drawn.append(params)
    return drawn


def sweep(
    entry: IdentityInstance,
    config: RunConfig = RunConfig(),
    convention: Optional[Convention] = None,
    progress: bool = False,
) -> List[VerificationRecord]:
    """`config.draws` seeded verifications of `entry`; the same seed gives the same records."""

    draws = draw_params(entry, sampler_rng(entry.id, config.seed), config.draws)
    iterator = tqdm(draws, desc=entry.id, unit="draw", disable=not progress, leave=False)
    return [verify_identity(entry, p, config, convention) for p in iterator]


@dataclass
class Report:
    config: RunConfig
    records: List[VerificationRecord] = field(default_factory=list)
    sweeps: List[SweepSummary] = field(default_factory=list)
    interrupted: bool = False

    @property
    def summary(self) -> Dict[str, object]:
        return summarize(self.records)

    @property
    def failed(self) -> bool:
        return any(r.status is Status.FAIL for r in self.records) or any(
            r.status is Status.FAIL for s in self.sweeps for r in s.records
        )

    @property
    def skipped(self) -> int:
        return sum(r.status is Status.SKIPPED for r in self.records)

    @property
    def too_many_skips(self) -> bool:
        limit = self.config.max_skips
        return limit is not None and self.skipped > limit

    @property
    def exit_code(self) -> int:
        """1 on any fail, or when more top-level records were skipped than `max_skips` allows."""

        return 1 if self.failed or self.too_many_skips else 0

    def to_json(self, timing: bool = True) -> Dict[str, object]:

        out: Dict[str, object] = {
            "schema_version": REPORT_SCHEMA_VERSION,
            "config": self.config.to_json(),
            "records": [r.to_json(timing) for r in self.records],
            "summary": self.summary,
        }
        if self.sweeps:
            out["sweeps"] = [s.to_json(timing) for s in self.sweeps]
        if self.interrupted:
            out["interrupted"] = True
        return out


def _init_worker(series_cap: Optional[int]):

    if series_cap is not None:
        set_series_cap(series_cap)


def _verify_task(entry: IdentityInstance, config: RunConfig, convention) -> VerificationRecord:
    return verify_identity(entry, None, config, convention)


def _sweep_task(entry: IdentityInstance, config: RunConfig, convention) -> SweepSummary:
    return SweepSummary(entry.id, sweep(entry, config, convention))


def select_entries(catalog: CatalogFile, ids) -> List[IdentityInstance]:
    return [catalog.get(i) for i in ids] if ids else list(catalog.entries)


def run_all(
    config: RunConfig = RunConfig(),
    catalog: Optional[CatalogFile] = None,
    convention: Optional[Convention] = None,
    progress_callback: Optional[ProgressCallback] = None,
    should_stop: Optional[Callable[[], bool]] = None,
) -> Report:
    """
    One record per selected entry, plus a sweep summary for every entry with a
    sampler when `config.draws` > 0. Work runs in `config.jobs` processes;
    results are collected in submission order so the report does not depend
    on the degree of parallelism.
    """
    catalog = catalog or load_catalog()
    entries = select_entries(catalog, config.entries)
    swept = [e for e in entries if e.sampler] if config.draws > 0 else []

    tasks = [(_verify_task, e) for e in entries] + [(_sweep_task, e) for e in swept]
    total = len(tasks)
    report = Report(config)
    logger.info(f"Verifying {len(entries)} entries and {len(swept)} sweeps with {config.jobs} job(s)")

    def collect(index: int, result):

        if isinstance(result, SweepSummary):
            report.sweeps.append(result)
        else:
            report.records.append(result)
        if progress_callback:
            progress_callback(index + 1, total)

    _init_worker(config.series_cap)
    if config.jobs <= 1:
        for index, (task, entry) in enumerate(tasks):
            if should_stop and should_stop():
                report.interrupted = True
                break
            collect(index, task(entry, config, convention))
        return report

    with ProcessPoolExecutor(
        max_workers=config.jobs, initializer=_init_worker, initargs=(config.series_cap,)
    ) as pool:
        futures = [pool.submit(task, entry, config, convention) for task, entry in tasks]
        for index, future in enumerate(futures):
            if should_stop and should_stop():
                report.interrupted = True
                for pending in futures[index:]:
                    pending.cancel()
                break
            collect(index, future.result())
    return report


# Report files


CSV_COLUMNS = (
    "sweep",
    "id",
    "kind",
    "status",
    "lhs_re",
    "lhs_im",
    "rhs_re",
    "rhs_im",
    "abs_err",
    "rel_err",
    "evaluations",
    "wall_time",
    "reason",
    "params",
)


def _csv_row(record: VerificationRecord, sweep_id: str = "") -> List[object]:

    def part(z: Optional[complex], attr: str):
        return "" if z is None else getattr(z, attr)

    def err(x: float):
        return "" if math.isnan(x) else x

    return [
        sweep_id,
        record.id,
        record.kind,
        record.status.value,
        part(record.lhs, "real"),
        part(record.lhs, "imag"),
        part(record.rhs, "real"),
        part(record.rhs, "imag"),
        err(record.abs_err),
        err(record.rel_err),
        record.evaluations,
        record.wall_time,
        record.reason,
        json.dumps(record.params.to_json(), sort_keys=True),
    ]


def report_text(report: Report, fmt: Union[ReportFormat, str] = ReportFormat.JSON, timing: bool = True) -> str:

    fmt = ReportFormat(fmt)
    if fmt is ReportFormat.JSON:
        return json.dumps(report.to_json(timing), indent=2) + "\n"

    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(CSV_COLUMNS)
    for record in report.records:
        writer.writerow(_csv_row(record))
    for summary in report.sweeps:
        for record in summary.records:
            writer.writerow(_csv_row(record, summary.id))
    return buffer.getvalue()


def format_for(path: Union[str, Path], default: Union[ReportFormat, str]) -> ReportFormat:
    """The report format implied by the file suffix, else `default`."""

    suffix = Path(path).suffix.lower().lstrip(".")
    return ReportFormat(suffix) if suffix in ("json", "csv") else ReportFormat(default)


def write_report(report: Report, path: Union[str, Path], fmt: Union[ReportFormat, str, None] = None) -> Path:

    path = Path(path)
    fmt = ReportFormat(fmt) if fmt else format_for(path, report.config.report_format)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(report_text(report, fmt), encoding="utf-8")
    logger.info(f"Report written to {path}")
    return path
