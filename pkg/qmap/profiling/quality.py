from dataclasses import dataclass, asdict
import threading

from ..utils import log_message


@dataclass(frozen=True)
class Check:
    name: str
    value: object
    passed: bool
    detail: str = ''


class QualityMonitor:
    """Ledger of the named checks a run performs"""

    def __init__(self):
        self._checks = []
        self._lock = threading.Lock()

    def record(self, name, value, passed, detail=''):
        check = Check(name, value, bool(passed), detail)
        with self._lock:
            self._checks.append(check)
        if not check.passed:
            log_message(f"check '{name}' failed: {detail or value}", 'WARNING')
        return check

    @property
    def checks(self):
        with self._lock:
            return list(self._checks)

    @property
    def passed(self):
        return all(check.passed for check in self.checks)

    def failures(self):
        return [check for check in self.checks if not check.passed]

    def as_rows(self):
        return [asdict(check) for check in self.checks]
