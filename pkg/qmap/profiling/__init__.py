"""
    Run Profiling Package
    Resource sampling for experiment runs and the ledger of run-time checks
"""

from .quality import QualityMonitor, Check
from .performance import PerformanceMonitor

__all__ = ['QualityMonitor', 'Check', 'PerformanceMonitor']
