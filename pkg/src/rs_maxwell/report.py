"""Residual bookkeeping shared by all verification routines."""

from __future__ import annotations

import json
from dataclasses import dataclass, field

import numpy as np


def max_abs(x) -> float:
    """Max-norm of an array (0.0 for empty input)."""
    x = np.asarray(x)
    if x.size == 0:
        return 0.0
    return float(np.max(np.abs(x)))


def scaled_residual(diff, *terms) -> float:
    """Max-norm of ``diff`` relative to the largest term magnitude (never below 1).

    Large rapidities make the individual terms of an identity grow like ch(b)^2
    while their difference should cancel; dividing by the operand scale keeps
    the residual a measure of relative rounding error.
    """
    scale = max([1.0] + [max_abs(t) for t in terms])
    return max_abs(diff) / scale


@dataclass
class ResidualReport:
    """Named residual norms. ``entries`` maps a relation name to its max-norm."""

    title: str = ""
    entries: dict[str, float] = field(default_factory=dict)

    def add(self, name: str, value) -> None:
        v = float(value)
        # keep the worst value if the same relation is sampled repeatedly
        self.entries[name] = max(v, self.entries.get(name, 0.0))

    def extend(self, other: "ResidualReport", prefix: str = "") -> None:
        for k, v in other.entries.items():
            self.add(prefix + k, v)

    def max(self) -> float:
        return max(self.entries.values(), default=0.0)

    def failures(self, tol: float) -> dict[str, float]:
        return {k: v for k, v in self.entries.items() if not v <= tol}

    def __getitem__(self, name: str) -> float:
        return self.entries[name]

    def __contains__(self, name: str) -> bool:
        return name in self.entries

    def __repr__(self):
        body = ", ".join(f"{k}={v:.3g}" for k, v in self.entries.items())
        return f"ResidualReport({self.title!r}: {body})"


# ----------------------------------------------------------- verification reports

@dataclass
class Check:
    check_id: str
    paper_anchor: str  # short name of the relation being tested
    residual: float
    tolerance: float

    @property
    def passed(self) -> bool:
        return bool(self.residual <= self.tolerance)

    def to_dict(self):
        return {
            "check_id": self.check_id,
            "paper_anchor": self.paper_anchor,
            "residual": float(self.residual),
            "tolerance": float(self.tolerance),
            "pass": self.passed,
        }


@dataclass
class VerificationReport:
    suite: str
    version: str
    config: dict = field(default_factory=dict)
    checks: list[Check] = field(default_factory=list)

    def add(self, check_id, anchor, residual, tolerance):
        """Record a check; repeated ids keep the worst residual."""
        residual = float(residual)
        for c in self.checks:
            if c.check_id == check_id:
                if not residual <= c.residual:
                    c.residual = residual
                return c
        c = Check(check_id, anchor, residual, float(tolerance))
        self.checks.append(c)
        return c

    def add_report(self, prefix, rep: ResidualReport, anchors: dict, tolerance, default_anchor=None):
        for name, v in rep.entries.items():
            self.add(f"{prefix}.{_slug(name)}", anchors.get(name, default_anchor or name), v, tolerance)

    @property
    def summary(self):
        n_pass = sum(c.passed for c in self.checks)
        return {"total": len(self.checks), "passed": n_pass, "failed": len(self.checks) - n_pass}

    @property
    def ok(self) -> bool:
        return all(c.passed for c in self.checks)

    def failed_checks(self):
        return [c for c in self.checks if not c.passed]

    def to_dict(self):
        return {
            "suite": self.suite,
            "tool_version": self.version,
            "config": self.config,
            "checks": [c.to_dict() for c in self.checks],
            "summary": self.summary,
        }

    @classmethod
    def from_dict(cls, d):
        checks = [Check(c["check_id"], c["paper_anchor"], c["residual"], c["tolerance"]) for c in d.get("checks", [])]
        return cls(d["suite"], d["tool_version"], d.get("config", {}), checks)


def _slug(name: str) -> str:
    out = []
    for ch in name.lower():
        out.append(ch if ch.isalnum() else "_")
    s = "".join(out)
    while "__" in s:
        s = s.replace("__", "_")
    return s.strip("_")


def emit_report(r: VerificationReport, fmt="json") -> str:
    if fmt == "json":
        return json.dumps(r.to_dict(), sort_keys=True, indent=2) + "\n"
    if fmt == "text":
        return _emit_text(r)
    raise ValueError(f"unknown report format {fmt!r}")


def parse_report(text: str) -> VerificationReport:
    return VerificationReport.from_dict(json.loads(text))


def _emit_text(r: VerificationReport) -> str:
    lines = [f"rs-maxwell {r.version}  suite: {r.suite}", ""]
    if r.checks:
        w = max(len(c.check_id) for c in r.checks)
        lines.append(f"{'status':6}  {'check':{w}}  {'residual':>10}  {'tolerance':>10}  relation")
        for c in r.checks:
            status = "PASS" if c.passed else "FAIL"
            lines.append(f"{status:6}  {c.check_id:{w}}  {c.residual:10.3e}  {c.tolerance:10.3e}  {c.paper_anchor}")
    else:
        lines.append("(no checks)")
    s = r.summary
    lines += ["", f"{s['passed']}/{s['total']} passed, {s['failed']} failed"]
    return "\n".join(lines) + "\n"
