import threading
from typing import Callable, Optional

from turbo_lerch.catalog import CatalogFile
from turbo_lerch.core.combinat import Convention
from turbo_lerch.utils.log import get_logger
from turbo_lerch.verify.records import RunConfig
from turbo_lerch.verify.runner import Report, run_all

logger = get_logger(__name__)


class VerificationWorker(threading.Thread):
    """
    Runs a full verification in a background thread so the caller can keep
    drawing progress and accept a cancel request.
    """

    def __init__(
        self,
        config: RunConfig,
        catalog: Optional[CatalogFile] = None,
        convention: Optional[Convention] = None,
        on_progress: Optional[Callable[[int, int], None]] = None,
        on_status: Optional[Callable[[str], None]] = None,
    ):
        super().__init__(name="turbo-lerch-verify", daemon=True)

        self.config = config
        self.catalog = catalog
        self.convention = convention
        self.on_progress = on_progress
        self.on_status = on_status

        self.report: Optional[Report] = None
        self.error: Optional[BaseException] = None
        self._stop_requested = threading.Event()

    @property
    def is_running(self) -> bool:
        return self.is_alive() and not self._stop_requested.is_set()

    def _status(self, message: str):
        if self.on_status:
            self.on_status(message)

    def run(self):

        try:
            self._status(f"Verification starting... jobs: {self.config.jobs}")

            def on_progress(current: int, total: int):
                if not self._stop_requested.is_set() and self.on_progress:
                    self.on_progress(current, total)

            self.report = run_all(
                self.config,
                self.catalog,
                self.convention,
                progress_callback=on_progress,
                should_stop=self._stop_requested.is_set,
            )
            if self.report.interrupted:
                self._status("Verification cancelled.")
            else:
                self._status("Verification completed.")

        except Exception as e:
            logger.error(f"Verification worker failed: {e}")
            self.error = e

    def stop(self, timeout: Optional[float] = None):
        """Asks the run to stop after the entry in progress and waits for it."""

        self._stop_requested.set()
        if self.is_alive():
            self.join(timeout)

    def result(self) -> Report:
        """Waits for the run; re-raises whatever stopped it."""

        self.join()
        if self.error is not None:
            raise self.error
        return self.report
