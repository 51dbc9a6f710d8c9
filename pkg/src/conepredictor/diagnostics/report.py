"""Key-value diagnostics report.

Each line is ``name value=<v> threshold=<t> status=<pass|fail|info>`` so that
reports can be grepped or parsed with a split on whitespace and ``=``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field


def _fmt(x) -> str:
    if isinstance(x, bool):
        return str(x).lower()
    if isinstance(x, (int,)) and not isinstance(x, bool):
        return str(x)
    if isinstance(x, float):
        if math.isnan(x):
            return "nan"
        return f"{x:.6e}"
    return str(x)


@dataclass
class CheckResult:
    name: str
    value: float
    threshold: str = "-"
    passed: bool | None = None  # None marks an informational metric

    @property
    def status(self) -> str:
        if self.passed is None:
            return "info"
        return "pass" if self.passed else "fail"

    def line(self) -> str:
        return f"{self.name} value={_fmt(self.value)} threshold={self.threshold} status={self.status}"


def at_most(name, value, limit) -> CheckResult:
    return CheckResult(name, float(value), f"<={limit:.3e}", bool(value <= limit))


def at_least(name, value, limit) -> CheckResult:
    return CheckResult(name, float(value), f">={limit:.3e}", bool(value >= limit))


def info(name, value) -> CheckResult:
    return CheckResult(name, value)


@dataclass
class Report:
    checks: list = field(default_factory=list)

    def add(self, check: CheckResult) -> CheckResult:
        self.checks.append(check)
        return check

    def extend(self, checks):
        self.checks.extend(checks)

    @property
    def passed(self) -> bool:
        return all(c.passed is not False for c in self.checks)

    @property
    def failures(self) -> list:
        return [c for c in self.checks if c.passed is False]

    def lines(self) -> list[str]:
        return [c.line() for c in self.checks]

    def text(self) -> str:
        return "\n".join(self.lines()) + "\n"

    def __getitem__(self, name) -> CheckResult:
        for c in self.checks:
            if c.name == name:
                return c
        raise KeyError(name)


def parse_report(text: str) -> dict:
    """Inverse of :meth:`Report.text`: ``{name: {"value": ..., "threshold": ..., "status": ...}}``.

    Lines starting with ``#`` are comments.
    """
    out = {}
    for raw in text.splitlines():
        parts = raw.split()
        if not parts or parts[0].startswith("#"):
            continue
        fields = dict(p.split("=", 1) for p in parts[1:])
        out[parts[0]] = fields
    return out
