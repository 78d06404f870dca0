import json
import os
import threading
import time
from typing import Any, Dict, List, Optional

from src.error.logger import get_logger
from src.models import CheckRecord, CheckReport

logger = get_logger(__name__)


class CheckCollector:
    """Assemble the check records of one run into a CheckReport."""

    def __init__(self, suite: str, group: str, map_spec: Optional[str], seed: int,
                 tolerances: Dict[str, float], command: List[str]):
        self.report = CheckReport(suite, group, map_spec, seed, dict(tolerances), list(command))
        self._records: Dict[str, CheckRecord] = {}
        self._started = time.perf_counter()

        # Suites may fill records from worker threads; one writer assembles the report
        self.lock = threading.Lock()

    def check(self, check_id: str, anchor: str) -> CheckRecord:
        """
        Get the record for a check, creating it on first use.

        Args:
            check_id: Stable identifier such as 'cones.chain'
            anchor: The statement the check verifies

        Returns:
            The record, shared by every later call with the same id
        """
        with self.lock:
            record = self._records.get(check_id)
            if record is None:
                record = CheckRecord(check_id, anchor)
                self._records[check_id] = record
                self.report.checks.append(record)
            return record

    def observe(self, check_id: str, margin: float, tol: float) -> None:
        with self.lock:
            self._records[check_id].observe(margin, tol)

    def skip(self, check_id: str, count: int = 1) -> None:
        with self.lock:
            self._records[check_id].skipped += count

    def constant(self, check_id: str, key: str, value: Any) -> None:
        """Attach an estimated constant to a check."""
        with self.lock:
            self._records[check_id].constants[key] = value

    def finish(self, check_id: str) -> CheckRecord:
        """Log the outcome of a check once it has seen all its samples."""
        record = self._records[check_id]
        level = logger.warning if record.violations else logger.info
        level(f"{check_id}: {record.samples} samples, {record.skipped} skipped, "
              f"{record.violations} violations, worst margin {record.worst_margin:.3e}")
        return record

    def close(self) -> CheckReport:
        """Stamp the wall time and return the finished report."""
        with self.lock:
            self.report.wall_time = round(time.perf_counter() - self._started, 3)
            return self.report

    def to_json(self) -> str:
        return json.dumps(self.report.to_dict(), sort_keys=True, indent=2)

    def save(self, path: str) -> None:
        """
        Write the report as JSON.

        Args:
            path: Output file; its directory is created when missing
        """
        directory = os.path.dirname(path)
        if directory:
            os.makedirs(directory, exist_ok=True)
        with self.lock:
            with open(path, 'w') as f:
                f.write(self.to_json())
                f.write('\n')
        logger.info(f"Report written to {path}")
