"""Left side against right side, one catalog entry at a time."""

from turbo_lerch.verify.records import ReportFormat, RunConfig, Status, SweepSummary, VerificationRecord
from turbo_lerch.verify.runner import Report, run_all, sweep, verify_identity, write_report

__all__ = [
    "Report",
    "ReportFormat",
    "RunConfig",
    "Status",
    "SweepSummary",
    "VerificationRecord",
    "run_all",
    "sweep",
    "verify_identity",
    "write_report",
]
