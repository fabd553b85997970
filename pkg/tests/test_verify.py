import csv
import dataclasses
import io
import json
import math

import pytest

from turbo_lerch.catalog import load_catalog
from turbo_lerch.config import DEFAULTS, ENV_VAR, Settings, SettingsError, load_settings
from turbo_lerch.core.combinat import Convention
from turbo_lerch.core import lerch
from turbo_lerch.core.errors import (
    CatalogError,
    DivergenceError,
    DomainError,
    NonConvergenceError,
    UnsupportedRegimeError,
    ValidityError,
)
from turbo_lerch.core.quad import Side
from turbo_lerch.identities.params import ParamSet, check_validity
from turbo_lerch.verify import ReportFormat, RunConfig, Status, run_all, runner, sweep, verify_identity, write_report
from turbo_lerch.verify.calibration import calibrate_deformation, calibrate_stirling
from turbo_lerch.verify.records import VerificationRecord, compare
from turbo_lerch.verify.workers import VerificationWorker


@pytest.fixture(scope="module")
def catalog():
    return load_catalog()


# Single verifications


def test_diekama_zeta3_passes(catalog):

    record = verify_identity(catalog.get("eq-diekama-zeta3"))
    assert record.status is Status.PASS, record.reason
    assert record.rel_err < 1e-6
    assert record.evaluations > 0
    assert not record.unexpected


def test_thm2_at_reducing_params_passes(catalog):

    record = verify_identity(catalog.get("thm2"), ParamSet(n=0, b=1, v=1, m=0.5, k=0, a=1))
    assert record.status is Status.PASS, record.reason
    assert record.rhs == pytest.approx(math.pi, rel=1e-12)


def test_series_entry_needs_no_quadrature(catalog):

    record = verify_identity(catalog.get("lerch-transformation"))
    assert record.status is Status.PASS, record.reason
    assert record.kind == "series"
    assert record.evaluations == 0


def test_erratum_multiplier_decides_the_verdict(catalog):

    entry = catalog.get("brychkov-6.15")
    assert verify_identity(entry).status is Status.PASS
    uncorrected = dataclasses.replace(entry, erratum_multiplier=1 + 0j)
    assert verify_identity(uncorrected).status is Status.FAIL


def test_invalid_params_are_skipped(catalog):

    record = verify_identity(catalog.get("thm2"), ParamSet(n=1, b=1, v=2, m=-0.5, k=0, a=1))
    assert record.status is Status.SKIPPED
    assert record.reason.startswith("invalid-params")
    assert record.lhs is None and record.rhs is None


def test_rhs_outside_regime_is_skipped(catalog, monkeypatch):

    def unsupported(*args, **kwargs):
        raise UnsupportedRegimeError("|z| > 1 without continuation")

    monkeypatch.setattr(runner, "example_rhs", unsupported)
    record = verify_identity(catalog.get("eq-diekama"))
    assert record.status is Status.SKIPPED
    assert record.reason.startswith("rhs-unsupported-regime:")


@pytest.mark.parametrize(
    "error,prefix",
    [(DivergenceError("Phi(1, s, a) diverges"), "rhs-divergent:"), (DomainError("log of zero"), "rhs-domain:")],
)
def test_rhs_errors_keep_their_own_reason(catalog, monkeypatch, error, prefix):

    def raising(*args, **kwargs):
        raise error

    monkeypatch.setattr(runner, "example_rhs", raising)
    record = verify_identity(catalog.get("eq-diekama"))
    assert record.status is Status.SKIPPED
    assert record.reason.startswith(prefix)


def test_unexpected_rhs_exception_is_a_fail(catalog, monkeypatch):

    def broken(*args, **kwargs):
        raise AttributeError("ParamSet has no parameter 'b'")

    monkeypatch.setattr(runner, "example_rhs", broken)
    record = verify_identity(catalog.get("eq-diekama"))
    assert record.status is Status.FAIL
    assert record.reason.startswith("error: AttributeError")

    report = run_all(RunConfig(entries=("eq-diekama", "eq-diekama-zeta3"), draws=0), catalog)
    assert [r.status for r in report.records] == [Status.FAIL, Status.FAIL]
    assert report.exit_code == 1


def test_unexpected_lhs_exception_is_a_fail(catalog, monkeypatch):

    def broken(*args, **kwargs):
        raise KeyError("segment")

    monkeypatch.setattr(runner, "integrate_semi_infinite", broken)
    record = verify_identity(catalog.get("eq-diekama"))
    assert record.status is Status.FAIL
    assert record.rhs is not None
    assert record.reason.startswith("error: KeyError")


def test_fixed_parameter_entry_evaluates_its_right_side(catalog):

    entry = catalog.get("malm-la1-ab1")
    value = runner.example_rhs(entry.id, entry.default_params)
    assert math.isfinite(value.real) and math.isfinite(value.imag)


def test_cross_check_disagreement_is_a_fail(catalog, monkeypatch):

    entry = catalog.get("malm1")
    rhs = runner.example_rhs(entry.id, entry.default_params)
    monkeypatch.setattr(runner, "example_cross_check", lambda *args, **kwargs: 2 * rhs)
    record = verify_identity(entry)
    assert record.status is Status.FAIL
    assert record.reason.startswith("cross-check:")
    assert record.lhs is None


def test_lhs_budget_exhaustion_is_nonconvergent(catalog, monkeypatch):

    def exhausted(*args, **kwargs):
        raise NonConvergenceError("budget exhausted")

    monkeypatch.setattr(runner, "integrate_semi_infinite", exhausted)
    record = verify_identity(catalog.get("eq-diekama"))
    assert record.status is Status.NONCONVERGENT
    assert record.rhs is not None
    assert record.lhs is None


def test_per_entry_tolerance_override(catalog):

    entry = catalog.get("eq-diekama")
    strict = RunConfig(overrides={"eq-diekama": (1e-300, 1e-300)})
    assert verify_identity(entry, config=strict).status is Status.FAIL
    assert verify_identity(entry).status is Status.PASS


def test_compare_is_monotone_in_tolerance():

    lhs, rhs = 1.0 + 1e-7, 1.0
    _, rel, tight = compare(lhs, rhs, 1e-8, 1e-12)
    _, _, loose = compare(lhs, rhs, 1e-6, 1e-12)
    assert rel == pytest.approx(1e-7, rel=1e-6)
    assert tight is Status.FAIL
    assert loose is Status.PASS
    # absolute floor near zero
    assert compare(1e-12, 0.0, 1e-6, 1e-9)[2] is Status.PASS


# Sampling


def test_draws_are_deterministic_and_valid(catalog):

    entry = catalog.get("thm1")
    first = runner.draw_params(entry, runner.sampler_rng("thm1", 42), 20)
    again = runner.draw_params(entry, runner.sampler_rng("thm1", 42), 20)
    other = runner.draw_params(entry, runner.sampler_rng("thm1", 7), 20)
    assert first == again
    assert first != other
    for p in first:
        assert p.n.real in (0, 1, 2) and p.k.real in (0, 1, 2)
        assert 0 < p.m.real < p.v.real * (p.n.real + 1)


def test_draws_stay_clear_of_the_validity_edge(catalog):

    entry = catalog.get("thm1")
    for p in runner.draw_params(entry, runner.sampler_rng("thm1", 42), 50):
        assert p.m.real <= p.v.real * (p.n.real + 1) - runner.SAMPLER_MARGIN
        assert p.m.real >= runner.SAMPLER_MARGIN


def test_validity_margin():

    p = ParamSet(m=1.95, v=1.0, n=1)
    check_validity(p, ["m_lt_nv"])
    with pytest.raises(ValidityError):
        check_validity(p, ["m_lt_nv"], margin=0.1)
    check_validity(p.replace(n=2), ["m_lt_nv", "n_nonneg"], margin=0.1)


def test_entry_without_sampler_cannot_be_swept(catalog):

    with pytest.raises(CatalogError):
        runner.draw_params(catalog.get("eq-diekama-zeta3"), runner.sampler_rng("x", 1), 1)


@pytest.mark.slow
def test_sweep_is_reproducible(catalog):

    config = RunConfig(draws=20, seed=42)
    first = [r.to_json(timing=False) for r in sweep(catalog.get("thm1"), config)]
    again = [r.to_json(timing=False) for r in sweep(catalog.get("thm1"), config)]
    assert len(first) == 20
    assert first == again
    assert all(r["status"] == "pass" for r in first)


# Whole runs and reports


def test_run_all_single_entry(catalog):

    report = run_all(RunConfig(entries=("eq-diekama",), draws=0), catalog)
    assert [r.id for r in report.records] == ["eq-diekama"]
    assert report.sweeps == []
    assert report.exit_code == 0

    document = report.to_json()
    assert set(document) == {"schema_version", "config", "records", "summary"}
    assert document["summary"]["pass"] == 1
    assert "jobs" not in document["config"]


def test_run_all_with_sweep(catalog):

    report = run_all(RunConfig(entries=("eq-diekama",), draws=3), catalog)
    assert len(report.sweeps) == 1
    assert report.sweeps[0].id == "eq-diekama"
    assert len(report.sweeps[0].records) == 3
    assert report.sweeps[0].pass_rate == 1.0


def test_run_all_stops_when_asked(catalog):

    report = run_all(RunConfig(entries=("eq-diekama", "eq-diekama-zeta3"), draws=0), catalog, should_stop=lambda: True)
    assert report.interrupted
    assert report.records == []
    assert report.to_json()["interrupted"] is True


def test_csv_report(catalog, tmp_path):

    report = run_all(RunConfig(entries=("eq-diekama",), draws=2), catalog)
    path = write_report(report, tmp_path / "out" / "report.csv")
    rows = list(csv.reader(io.StringIO(path.read_text(encoding="utf-8"))))
    assert tuple(rows[0]) == runner.CSV_COLUMNS
    assert len(rows) == 1 + 1 + 2
    assert rows[-1][0] == "eq-diekama"


def test_json_report_format_by_suffix(catalog, tmp_path):

    report = run_all(RunConfig(entries=("eq-diekama",), draws=0, report_format="csv"), catalog)
    path = write_report(report, tmp_path / "report.json")
    assert json.loads(path.read_text(encoding="utf-8"))["schema_version"] == 1
    assert runner.format_for("report.txt", ReportFormat.CSV) is ReportFormat.CSV


def _records(*statuses):
    return [VerificationRecord(f"e{i}", ParamSet(), status) for i, status in enumerate(statuses)]


def test_skip_gate_sets_the_exit_code():

    records = _records(Status.PASS, Status.SKIPPED, Status.SKIPPED, Status.NONCONVERGENT)
    assert runner.Report(RunConfig(max_skips=2), records).exit_code == 0
    gated = runner.Report(RunConfig(max_skips=1), records)
    assert gated.skipped == 2
    assert gated.too_many_skips
    assert gated.exit_code == 1
    assert runner.Report(RunConfig(), records).exit_code == 0
    assert runner.Report(RunConfig(), _records(Status.PASS, Status.FAIL)).exit_code == 1


def test_worker_initializer_sets_the_series_cap(monkeypatch):

    monkeypatch.setattr(lerch, "_series_cap", lerch._series_cap)
    runner._init_worker(1234)
    assert lerch._series_cap == 1234
    runner._init_worker(None)
    assert lerch._series_cap == 1234


def test_series_cap_reaches_the_run(catalog, monkeypatch):

    monkeypatch.setattr(lerch, "_series_cap", lerch._series_cap)
    run_all(RunConfig(entries=("eq-diekama",), draws=0, series_cap=4321), catalog)
    assert lerch._series_cap == 4321


@pytest.mark.slow
def test_parallel_run_matches_serial(catalog):

    ids = ("thm2", "eq-diekama", "brychkov-6.15", "lerch-transformation")
    serial = run_all(RunConfig(entries=ids, draws=3, jobs=1), catalog)
    parallel = run_all(RunConfig(entries=ids, draws=3, jobs=2), catalog)
    assert serial.to_json(timing=False) == parallel.to_json(timing=False)


@pytest.mark.slow
@pytest.mark.parametrize(
    "entry_id", ["thm1", "thm2", "eq-diekama", "brychkov-6.15", "grobner-piecewise", "malm1-catalan-a2"]
)
def test_bundled_entries_pass_at_defaults(catalog, entry_id):

    record = verify_identity(catalog.get(entry_id))
    assert record.status is Status.PASS, record.reason


@pytest.mark.slow
@pytest.mark.parametrize("entry_id", load_catalog().ids)
def test_every_entry_meets_its_expected_status(catalog, entry_id):

    record = verify_identity(catalog.get(entry_id))
    assert record.status.value == record.expected, f"{record.status.value}: {record.reason}"


@pytest.mark.slow
def test_default_run_respects_the_release_gate(catalog):

    report = run_all(RunConfig(draws=0, max_skips=3), catalog)
    assert not report.failed
    assert report.skipped <= 3
    assert report.exit_code == 0


def test_run_config_validation():

    with pytest.raises(ValueError):
        RunConfig(rel_tol=0)
    with pytest.raises(ValueError):
        RunConfig(draws=-1)
    with pytest.raises(ValueError):
        RunConfig(jobs=0)
    with pytest.raises(ValueError):
        RunConfig(overrides={"thm1": (1e-6, -1.0)})
    with pytest.raises(ValueError):
        RunConfig(report_format="xml")
    with pytest.raises(ValueError):
        RunConfig(max_skips=-1)
    with pytest.raises(ValueError):
        RunConfig(series_cap=0)


# Background worker


def test_worker_reports_progress(catalog):

    seen = []
    statuses = []
    worker = VerificationWorker(
        RunConfig(entries=("eq-diekama",), draws=0),
        catalog,
        on_progress=lambda current, total: seen.append((current, total)),
        on_status=statuses.append,
    )
    worker.start()
    report = worker.result()
    assert seen == [(1, 1)]
    assert not worker.is_running
    assert report.records[0].status is Status.PASS
    assert statuses[-1] == "Verification completed."


def test_worker_reraises_failures():

    worker = VerificationWorker(RunConfig(entries=("no-such-entry",), draws=0))
    worker.start()
    with pytest.raises(CatalogError):
        worker.result()


# Settings


def test_settings_defaults():

    settings = Settings()
    assert settings.value("verify/rel_tol", type=float) == DEFAULTS["verify/rel_tol"]
    assert settings.value("missing", "fallback") == "fallback"
    assert settings.quadrature_spec().rule == "de"
    assert list(settings.as_dict()) == sorted(DEFAULTS)


def test_settings_file_nested_and_flat(tmp_path):

    path = tmp_path / "settings.json"
    path.write_text(json.dumps({"verify": {"draws": "5"}, "quad/rule": "gk"}), encoding="utf-8")
    settings = load_settings(path, overrides={"verify/seed": 7, "verify/draws": None})
    assert settings.value("verify/draws") == 5
    assert settings.value("verify/seed") == 7
    assert settings.quadrature_spec().rule == "gk"


def test_settings_from_environment(tmp_path, monkeypatch):

    path = tmp_path / "env.json"
    path.write_text(json.dumps({"verify/abs_tol": 1e-12}), encoding="utf-8")
    monkeypatch.setenv(ENV_VAR, str(path))
    assert load_settings().value("verify/abs_tol") == 1e-12


def test_settings_errors(tmp_path):

    with pytest.raises(SettingsError):
        Settings({"verify/unknown": 1})
    with pytest.raises(SettingsError):
        Settings({"verify/draws": "many"})
    bad = tmp_path / "bad.json"
    bad.write_text("{", encoding="utf-8")
    with pytest.raises(SettingsError):
        load_settings(bad)


def test_run_config_from_settings():

    settings = Settings({"verify/jobs": 3, "verify/draws": 4})
    config = RunConfig.from_settings(settings, seed=9, draws=None)
    assert config.jobs == 3
    assert config.draws == 4
    assert config.seed == 9
    assert RunConfig.from_settings(Settings()).jobs >= 1

    defaults = RunConfig.from_settings(Settings())
    assert defaults.max_skips == 3
    assert defaults.series_cap == DEFAULTS["lerch/series_cap"]
    assert RunConfig.from_settings(Settings({"verify/max_skips": -1})).max_skips is None


# Calibrations


@pytest.mark.slow
def test_stirling_calibration_picks_signed():

    result = calibrate_stirling()
    assert result.convention is Convention.SIGNED


@pytest.mark.slow
def test_deformation_calibration_agrees_with_catalog_side(catalog):

    result = calibrate_deformation(catalog.get("poly-ex2-case1"))
    assert Side.BELOW in result.matching
    assert Side.ABOVE not in result.matching


# Acceptance-level checks


@pytest.mark.slow
def test_zeta3_constant_to_1e8(catalog):

    record = verify_identity(catalog.get("eq-diekama-zeta3"), config=RunConfig(rel_tol=1e-8, abs_tol=1e-300))
    assert record.status is Status.PASS, record.rel_err


@pytest.mark.slow
@pytest.mark.parametrize("a", [0.5, 1.0, 2.0, math.pi])
def test_diekama_family_to_1e7(catalog, a):

    record = verify_identity(catalog.get("eq-diekama"), ParamSet(a=a), RunConfig(rel_tol=1e-7, abs_tol=1e-300))
    assert record.status is Status.PASS, record.rel_err


@pytest.mark.slow
def test_complex_principal_value_example(catalog):

    record = verify_identity(catalog.get("ex4-a-epi-n0"))
    expected = 1j * math.pi * math.log(math.pi / math.tanh(math.pi / 2))
    assert record.status is Status.PASS, record.reason
    assert abs(record.lhs.real - expected.real) <= 1e-6
    assert abs(record.lhs.imag - expected.imag) <= 1e-6


@pytest.mark.slow
@pytest.mark.parametrize("entry_id", ["malm1-catalan-a2", "malm1-catalan-a3", "malm1-catalan-a4"])
def test_catalan_scaled_real_parts(catalog, entry_id):

    record = verify_identity(catalog.get(entry_id))
    assert record.lhs is not None, record.reason
    assert abs(record.lhs.real - record.rhs.real) <= 1e-7
