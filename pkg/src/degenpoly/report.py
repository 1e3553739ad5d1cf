"""Identity-check verdicts."""

from __future__ import annotations

from dataclasses import dataclass, field


@dataclass(frozen=True)
class Failure:
    index: object  # degree, or [n, k] for triangle entries
    lhs: str
    rhs: str

    def to_dict(self) -> dict:
        index = list(self.index) if isinstance(self.index, tuple) else self.index
        return {"index": index, "lhs": self.lhs, "rhs": self.rhs}


@dataclass(frozen=True)
class VerdictReport:
    identity_id: str
    params: dict
    passed: bool
    first_failure: Failure | None = None
    elapsed_ms: float = 0.0
    notes: tuple = field(default=())

    def __post_init__(self):
        if self.passed != (self.first_failure is None):
            raise ValueError("passed must be true exactly when there is no failure")

    def to_dict(self, with_elapsed: bool = True) -> dict:
        out = {
            "identity_id": self.identity_id,
            "params": dict(self.params),
            "passed": self.passed,
            "first_failure": self.first_failure.to_dict() if self.first_failure else None,
        }
        if with_elapsed:
            out["elapsed_ms"] = round(self.elapsed_ms, 3)
        if self.notes:
            out["notes"] = list(self.notes)
        return out

    def summary(self) -> str:
        params = ", ".join(f"{k}={v}" for k, v in self.params.items())
        status = "PASS" if self.passed else "FAIL"
        line = f"{status} {self.identity_id}({params})"
        if self.first_failure is not None:
            f = self.first_failure
            line += f" at {f.index}: lhs={f.lhs} rhs={f.rhs}"
        return line
