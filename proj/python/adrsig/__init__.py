"""Adverse drug reaction signal detection from before/after event windows."""

from ._adrsig import (
    AdrsigError,
    DetectionConfig,
    LedgerEntry,
    RatioStats,
    ReadCode,
    SignalRow,
    TTestResult,
    __version__,
    cli,
    detect_files,
    incomplete_beta,
    key_at_level,
    parse_code,
    ratio_stats,
    render,
    student_t_test,
    synthesize,
    t_cdf,
)

__all__ = [
    "AdrsigError",
    "DetectionConfig",
    "LedgerEntry",
    "RatioStats",
    "ReadCode",
    "SignalRow",
    "TTestResult",
    "__version__",
    "cli",
    "detect_files",
    "incomplete_beta",
    "key_at_level",
    "parse_code",
    "ratio_stats",
    "render",
    "student_t_test",
    "synthesize",
    "t_cdf",
]
