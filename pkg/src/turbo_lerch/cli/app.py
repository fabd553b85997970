import argparse
import json
import sys
from typing import Dict, List, Optional

from colorama import Fore, Style
from colorama import init as colorama_init
from tqdm import tqdm

from turbo_lerch import __version__
from turbo_lerch.catalog import bind, list_entries, load_catalog
from turbo_lerch.config.settings import load_settings
from turbo_lerch.core.combinat import Convention
from turbo_lerch.core.errors import TurboLerchError
from turbo_lerch.core.lerch import LerchArgs, lerch_phi, lerch_phi_ds
from turbo_lerch.core.quad import Side, integrate_semi_infinite
from turbo_lerch.identities.registry import example_classical, example_rhs, lhs_integrand
from turbo_lerch.utils.log import get_logger, setup_logging
from turbo_lerch.utils.util import format_complex, human_readable_duration
from turbo_lerch.verify.calibration import calibrate_deformation, calibrate_stirling
from turbo_lerch.verify.records import RunConfig, Status, SweepSummary, VerificationRecord
from turbo_lerch.verify.runner import sweep, verify_identity, write_report
from turbo_lerch.verify.workers import VerificationWorker

logger = get_logger(__name__)

STATUS_COLORS = {
    Status.PASS: Fore.GREEN,
    Status.FAIL: Fore.RED,
    Status.SKIPPED: Fore.YELLOW,
    Status.NONCONVERGENT: Fore.MAGENTA,
}


class Console:
    """stdout with optional colour."""

    def __init__(self, color: bool):
        self.color = color

    def paint(self, text: str, color: str) -> str:
        return f"{color}{text}{Style.RESET_ALL}" if self.color else text

    def print(self, text: str = ""):
        print(text)

    def status(self, status: Status) -> str:
        return self.paint(status.value, STATUS_COLORS[status])

    def record(self, record: VerificationRecord):

        rel = "-" if record.rel_err != record.rel_err else f"{record.rel_err:.3e}"
        line = f"{record.id:<28} {self.status(record.status):<30} rel_err={rel}"
        if record.reason:
            line += f"  ({record.reason})"
        self.print(line)


def _overrides(pairs: Optional[List[str]]) -> Dict[str, str]:
    """--param key=value pairs."""

    values = {}
    for pair in pairs or []:
        key, sep, value = pair.partition("=")
        if not sep or not key:
            raise argparse.ArgumentTypeError(f"expected key=value, got '{pair}'")
        values[key.strip()] = value.strip()
    return values


def _entries_arg(text: Optional[str]) -> tuple:
    return tuple(i.strip() for i in text.split(",") if i.strip()) if text else ()


def _complex_arg(text: str) -> complex:
    try:
        return complex(text.replace(" ", "").replace("i", "j"))
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a complex number: '{text}'") from None


# Subcommands


def cmd_verify(args, console: Console) -> int:

    settings = load_settings(args.settings)
    settings.apply_runtime()
    config = RunConfig.from_settings(
        settings,
        rel_tol=args.rel_tol,
        abs_tol=args.abs_tol,
        seed=args.seed,
        jobs=args.jobs,
        draws=args.draws,
        report_format=args.format,
        max_skips=args.max_skips,
        entries=_entries_arg(args.entries),
    )
    catalog = load_catalog(args.catalog)

    bar = tqdm(total=0, unit="entry", disable=args.no_progress, leave=False)

    def on_progress(current: int, total: int):
        bar.total = total
        bar.n = current
        bar.refresh()

    worker = VerificationWorker(config, catalog, args.convention, on_progress=on_progress, on_status=logger.info)
    worker.start()
    try:
        report = worker.result()
    except KeyboardInterrupt:
        worker.stop()
        report = worker.result()
    finally:
        bar.close()

    for record in report.records:
        console.record(record)
    for summary in report.sweeps:
        _print_sweep(summary, console)

    summary = report.summary
    console.print(
        f"\npass {summary['pass']}  fail {summary['fail']}  skipped {summary['skipped']}  "
        f"nonconvergent {summary['nonconvergent']}  max_rel_err {summary['max_rel_err']}"
    )
    elapsed = sum(r.wall_time for r in report.records) + sum(r.wall_time for s in report.sweeps for r in s.records)
    console.print(f"verification time {human_readable_duration(elapsed)}")
    if report.too_many_skips:
        console.print(f"{report.skipped} entries skipped, more than the allowed {config.max_skips}")
    if args.report:
        path = write_report(report, args.report, args.format)
        console.print(f"report: {path}")
    return report.exit_code


def _print_sweep(summary: SweepSummary, console: Console):

    counts = summary.counts()
    rate = summary.pass_rate
    console.print(
        f"sweep {summary.id:<22} draws {len(summary.records):>3}  pass {counts['pass']}  fail {counts['fail']}  "
        f"skipped {counts['skipped']}  nonconvergent {counts['nonconvergent']}  "
        f"pass_rate {'-' if rate != rate else f'{rate:.2f}'}  max_rel_err {summary.max_rel_err}"
    )


def cmd_sweep(args, console: Console) -> int:

    settings = load_settings(args.settings)
    settings.apply_runtime()
    config = RunConfig.from_settings(
        settings, rel_tol=args.rel_tol, abs_tol=args.abs_tol, seed=args.seed, draws=args.draws, jobs=1
    )
    entry = load_catalog(args.catalog).get(args.id)

    records = sweep(entry, config, args.convention, progress=not args.no_progress)
    summary = SweepSummary(entry.id, records)
    if args.verbose:
        for record in records:
            console.record(record)
    _print_sweep(summary, console)

    if args.report:
        document = {"config": config.to_json(), "sweeps": [summary.to_json()]}
        with open(args.report, "w", encoding="utf-8") as handle:
            json.dump(document, handle, indent=2)
            handle.write("\n")
    return 1 if any(r.status is Status.FAIL for r in records) else 0


def cmd_eval_phi(args, console: Console) -> int:

    lerch_args = LerchArgs(args.z, args.s, args.a)
    value = lerch_phi_ds(lerch_args) if args.ds else lerch_phi(lerch_args)
    console.print(format_complex(value, args.digits))
    return 0


def cmd_eval_rhs(args, console: Console) -> int:

    entry = load_catalog(args.catalog).get(args.id)
    params = bind(entry, _overrides(args.param))
    rhs = example_rhs(entry.id, params, args.convention) * entry.erratum_multiplier
    console.print(f"params  {params}")
    console.print(f"rhs     {format_complex(rhs, args.digits)}")
    if entry.erratum_multiplier != 1:
        console.print(f"        (includes erratum multiplier {format_complex(entry.erratum_multiplier, 3)})")

    if args.classical:
        console.print(f"classic {format_complex(example_classical(entry.id, params, args.convention), args.digits)}")

    if not args.lhs:
        return 0
    config = RunConfig.from_settings(load_settings(args.settings), jobs=1)
    record = verify_identity(entry, params, config, args.convention)
    if record.lhs is not None:
        console.print(f"lhs     {format_complex(record.lhs, args.digits)}")
    console.record(record)
    return 1 if record.status is Status.FAIL else 0


def cmd_quad(args, console: Console) -> int:

    settings = load_settings(args.settings, {"quad/rule": args.rule})
    entry = load_catalog(args.catalog).get(args.id)
    params = bind(entry, _overrides(args.param))
    side = Side(args.side) if args.side else entry.side

    integrand = lhs_integrand(entry.id, params, side)
    spec = integrand.quadrature_spec(settings.quadrature_spec())
    for sing in integrand.singularities:
        console.print(f"singularity  {sing.kind:<7} x = {sing.location:.12g}  order {sing.order}")
    outcome = integrate_semi_infinite(integrand, spec)

    console.print(f"value        {format_complex(outcome.value, args.digits)}")
    console.print(f"error        {outcome.error_estimate:.3e}")
    console.print(f"evaluations  {outcome.evaluations}  rounds {outcome.rounds}  side {side.value}")
    return 0


def cmd_catalog(args, console: Console) -> int:

    catalog = load_catalog(args.catalog)
    if args.action == "list":
        for entry in list_entries(catalog, args.filter):
            tags = ",".join(entry.tags)
            console.print(f"{entry.id:<28} {entry.kind:<9} {entry.family:<26} {tags}")
        return 0

    entry = catalog.get(args.id)
    document = entry.to_json()
    document["singularities"] = [s.as_dict() for s in entry.singularities()]
    console.print(json.dumps(document, indent=2, ensure_ascii=False))
    return 0


def cmd_calibrate(args, console: Console) -> int:

    settings = load_settings(args.settings)
    spec = settings.quadrature_spec()
    catalog = load_catalog(args.catalog)

    stirling = calibrate_stirling(spec)
    chosen = stirling.convention.value if stirling.convention else "none"
    console.print(f"stirling convention: {console.paint(chosen, Fore.CYAN)}")
    for point in stirling.points:
        errs = "  ".join(f"{c.value}={point.rel_err(c):.2e}" for c in Convention)
        console.print(f"  {point.params}  {errs}")

    ids = _entries_arg(args.entries)
    entries = [catalog.get(i) for i in ids] if ids else [
        e for e in catalog if e.kind == "integral" and any(s.kind == "pole" for s in e.singularities())
    ]
    for entry in tqdm(entries, unit="entry", disable=args.no_progress, leave=False):
        result = calibrate_deformation(entry, spec)
        matching = ",".join(s.value for s in result.matching) or "none"
        color = Fore.GREEN if entry.side in result.matching or not result.matching else Fore.YELLOW
        console.print(f"{entry.id:<28} catalog side {entry.side.value:<6} matching {console.paint(matching, color)}")
    return 0 if stirling.convention else 1


# Parser


def build_parser() -> argparse.ArgumentParser:

    parser = argparse.ArgumentParser(
        prog="turbo-lerch",
        description="Hurwitz-Lerch zeta toolkit: evaluate closed forms and verify integral identities.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    parser.add_argument("-v", "--verbose", action="count", default=0, help="-v for INFO, -vv for DEBUG logging.")
    parser.add_argument("--settings", help="JSON settings file (default: $TURBO_LERCH_SETTINGS).")
    parser.add_argument("--catalog", help="Catalog file (default: the bundled catalog).")
    parser.add_argument("--no-color", action="store_true", help="Plain output.")
    parser.add_argument("--no-progress", action="store_true", help="Disable progress bars.")
    parser.add_argument(
        "--convention",
        type=Convention,
        choices=list(Convention),
        default=None,
        help="Stirling sign convention (default: the calibrated one).",
    )
    parser.add_argument("--digits", type=int, default=15, help="Significant digits in printed values.")

    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("verify", help="Verify catalog entries and write a report.")
    p.add_argument("--entries", help="Comma-separated ids (default: all).")
    p.add_argument("--rel-tol", type=float, dest="rel_tol")
    p.add_argument("--abs-tol", type=float, dest="abs_tol")
    p.add_argument("--seed", type=int)
    p.add_argument("--jobs", type=int)
    p.add_argument("--draws", type=int, help="Sweep draws per sampled entry (0 disables sweeps).")
    p.add_argument("--max-skips", type=int, help="Skipped entries a passing run may have.")
    p.add_argument("--report", help="Report path; the suffix picks the format unless --format is given.")
    p.add_argument("--format", choices=["json", "csv"])
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("sweep", help="Seeded random-parameter sweep of one entry.")
    p.add_argument("id")
    p.add_argument("--draws", type=int)
    p.add_argument("--seed", type=int)
    p.add_argument("--rel-tol", type=float, dest="rel_tol")
    p.add_argument("--abs-tol", type=float, dest="abs_tol")
    p.add_argument("--report", help="JSON file for the sweep summary.")
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("eval-phi", help="Evaluate Phi(z, s, a).")
    p.add_argument("z", type=_complex_arg)
    p.add_argument("s", type=_complex_arg)
    p.add_argument("a", type=_complex_arg)
    p.add_argument("--ds", action="store_true", help="Evaluate d/ds Phi instead.")
    p.set_defaults(func=cmd_eval_phi)

    p = sub.add_parser("eval-rhs", help="Evaluate an entry's right side.")
    p.add_argument("id")
    p.add_argument("--param", action="append", metavar="KEY=VALUE", help="Override a default parameter.")
    p.add_argument("--lhs", action="store_true", help="Also integrate the left side and compare.")
    p.add_argument("--classical", action="store_true", help="Also print the classical table value.")
    p.set_defaults(func=cmd_eval_rhs)

    p = sub.add_parser("quad", help="Integrate an entry's left side.")
    p.add_argument("id")
    p.add_argument("--param", action="append", metavar="KEY=VALUE")
    p.add_argument("--side", choices=[s.value for s in Side])
    p.add_argument("--rule", choices=["de", "gk"])
    p.set_defaults(func=cmd_quad)

    p = sub.add_parser("catalog", help="Inspect the identity catalog.")
    catalog_sub = p.add_subparsers(dest="action", required=True)
    q = catalog_sub.add_parser("list")
    q.add_argument("filter", nargs="?", help="Tag, family or id prefix.")
    q = catalog_sub.add_parser("show")
    q.add_argument("id")
    p.set_defaults(func=cmd_catalog)

    p = sub.add_parser("calibrate", help="Stirling convention and deformation-side calibration.")
    p.add_argument("--entries", help="Comma-separated ids (default: entries with real poles).")
    p.set_defaults(func=cmd_calibrate)

    return parser


def main(argv: Optional[List[str]] = None) -> int:

    parser = build_parser()
    args = parser.parse_args(argv)

    setup_logging(args.verbose)
    color = not args.no_color and sys.stdout.isatty()
    if color:
        colorama_init()
    console = Console(color)

    try:
        return args.func(args, console)
    except TurboLerchError as e:
        console.print(console.paint(f"error: {e}", Fore.RED))
        return 2
    except argparse.ArgumentTypeError as e:
        parser.error(str(e))
    return 2


if __name__ == "__main__":
    sys.exit(main())
