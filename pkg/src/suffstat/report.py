"""Verification reports shared by the checkers."""

from __future__ import annotations

from dataclasses import dataclass, field


@dataclass
class Check:
    name: str
    passed: bool
    param: object = None
    counterexample: str | None = None

    def line(self):
        status = "PASS" if self.passed else "FAIL"
        where = f" [{self.param}]" if self.param is not None else ""
        text = f"{status} {self.name}{where}"
        if self.counterexample:
            text += f": {self.counterexample}"
        return text


@dataclass
class Report:
    name: str
    checks: list = field(default_factory=list)
    notes: list = field(default_factory=list)

    def add(self, name, passed, param=None, counterexample=None):
        self.checks.append(Check(name, bool(passed), param, counterexample))
        return passed

    def extend(self, other):
        self.checks.extend(other.checks)
        for n in other.notes:
            if n not in self.notes:
                self.notes.append(n)
        return self

    @property
    def failures(self):
        return [c for c in self.checks if not c.passed]

    @property
    def ok(self):
        return not self.failures

    def __bool__(self):
        return self.ok

    def summary(self):
        n = len(self.checks)
        bad = len(self.failures)
        return f"{self.name}: {n - bad}/{n} checks passed"

    def render(self, verbose=False):
        lines = [self.summary()]
        shown = self.checks if verbose else self.failures
        lines.extend("  " + c.line() for c in shown)
        lines.extend("  note: " + n for n in self.notes)
        return "\n".join(lines)

    def to_json(self):
        return {
            "kind": "report",
            "name": self.name,
            "ok": self.ok,
            "checks": len(self.checks),
            "failures": [
                {"check": c.name, "param": None if c.param is None else str(c.param),
                 "counterexample": c.counterexample}
                for c in self.failures
            ],
            "notes": list(self.notes),
        }


def first_difference(lhs, rhs):
    """Smallest outcome (in canonical order) where two distributions differ."""
    from .dist import format_outcome
    from .msets import outcome_key

    keys = sorted(set(lhs.support()) | set(rhs.support()), key=outcome_key)
    for x in keys:
        if lhs[x] != rhs[x]:
            return f"at {format_outcome(x)}: {lhs[x]} != {rhs[x]}"
    return None
