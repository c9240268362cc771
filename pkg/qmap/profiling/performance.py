import os
import threading
import time
from datetime import datetime

import psutil

from ..utils import log_message


class PerformanceMonitor:
    """Samples the process RSS and CPU time on a background thread"""

    def __init__(self, interval_sec=0.5):
        self.interval_sec = interval_sec
        self.is_running = False
        self._thread = None
        self._lock = threading.Lock()
        self.collected_data = []
        self.process = psutil.Process(os.getpid())
        self.start_time = None
        self.stop_time = None
        self._cpu_start = None

    def _monitor_loop(self):
        while self.is_running:
            loop_start_time = time.monotonic()
            row = self.get_snapshot()
            row['elapsed_time_s'] = round(loop_start_time - self.start_time, 4)
            with self._lock:
                self.collected_data.append(row)

            sleep_time = self.interval_sec - (time.monotonic() - loop_start_time)
            if sleep_time > 0:
                time.sleep(sleep_time)

    def get_snapshot(self):
        """One snapshot of the process metrics"""
        cpu = self.process.cpu_times()
        return {
            'timestamp': datetime.now().isoformat(),
            'rss_mb': self.process.memory_info().rss / (1024 * 1024),
            'cpu_s': cpu.user + cpu.system,
            'threads': self.process.num_threads()
        }

    def start(self):
        if self._thread is not None:
            return
        log_message(f"Starting performance monitor with a {self.interval_sec}s interval", 'DEBUG')
        self.start_time = time.monotonic()
        cpu = self.process.cpu_times()
        self._cpu_start = cpu.user + cpu.system
        self.is_running = True
        self._thread = threading.Thread(target=self._monitor_loop, daemon=True)
        self._thread.start()

    def stop(self):
        if not self.is_running:
            return
        self.is_running = False
        self._thread.join()
        self._thread = None
        self.stop_time = time.monotonic()
        with self._lock:
            self.collected_data.append(self.get_snapshot())
        log_message('Performance monitor stopped', 'DEBUG')

    def summary(self):
        """Wall and CPU time, peak RSS and sample count of the monitored span"""
        if self.start_time is None:
            return {'wall_s': 0.0, 'cpu_s': 0.0, 'peak_rss_mb': 0.0, 'samples': 0}
        end = self.stop_time if self.stop_time is not None else time.monotonic()
        with self._lock:
            rows = list(self.collected_data)
        if not rows:
            rows = [self.get_snapshot()]
        return {
            'wall_s': round(end - self.start_time, 3),
            'cpu_s': round(rows[-1]['cpu_s'] - self._cpu_start, 3),
            'peak_rss_mb': round(max(row['rss_mb'] for row in rows), 1),
            'samples': len(rows)
        }
