"""Law-check reports shared by all validators."""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import List, Optional, Tuple


@dataclass
class Failure:
    law: str
    witness: Tuple

    def __str__(self):
        return f"{self.law} at {self.witness}"


@dataclass
class ValidationReport:
    subject: str = ""
    checked: int = 0
    failures: List[Failure] = field(default_factory=list)
    status: Optional[str] = None

    @property
    def ok(self) -> bool:
        return not self.failures

    def check(self, cond: bool, law: str, witness: Tuple = ()) -> bool:
        self.checked += 1
        if not cond:
            self.failures.append(Failure(law, tuple(witness)))
        return cond

    def merge(self, other: "ValidationReport", prefix: str = "") -> "ValidationReport":
        self.checked += other.checked
        for f in other.failures:
            self.failures.append(Failure(prefix + f.law, f.witness))
        return self

    def first(self, law: str):
        for f in self.failures:
            if f.law == law:
                return f
        return None

    def laws_failed(self) -> List[str]:
        seen = []
        for f in self.failures:
            if f.law not in seen:
                seen.append(f.law)
        return seen

    def __str__(self):
        if self.ok:
            return f"{self.subject}: ok ({self.checked} checks)"
        lines = [f"{self.subject}: {len(self.failures)} failures"]
        lines += [f"  {f}" for f in self.failures[:20]]
        return "\n".join(lines)
