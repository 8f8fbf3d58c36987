"""Inequality check records shared by the spectral and entropic suites.

Each check is one scalar inequality with its slack: the margin by which it
holds (negative means violated). Serialized form is a JSON array of
{"name", "lhs", "bound", "slack", "satisfied"} objects.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

SLACK_TOL = 1e-10
SATURATION_TOL = 1e-10


@dataclass(frozen=True)
class InequalityCheck:
    name: str
    lhs: float
    bound: float
    slack: float

    @property
    def satisfied(self) -> bool:
        return self.slack >= -SLACK_TOL

    @property
    def saturated(self) -> bool:
        return math.isfinite(self.slack) and abs(self.slack) < SATURATION_TOL

    def to_dict(self) -> dict:
        return {
            "name": self.name,
            "lhs": float(self.lhs),
            "bound": float(self.bound),
            "slack": float(self.slack),
            "satisfied": self.satisfied,
        }


@dataclass
class InequalityReport:
    checks: list[InequalityCheck] = field(default_factory=list)

    def add(self, name: str, lhs: float, bound: float, slack: float) -> InequalityCheck:
        check = InequalityCheck(name, float(lhs), float(bound), float(slack))
        self.checks.append(check)
        return check

    def extend(self, other: "InequalityReport") -> None:
        self.checks.extend(other.checks)

    @property
    def all_satisfied(self) -> bool:
        return all(c.satisfied for c in self.checks)

    def violations(self) -> list[InequalityCheck]:
        return [c for c in self.checks if not c.satisfied]

    def __getitem__(self, name: str) -> InequalityCheck:
        for c in self.checks:
            if c.name == name:
                return c
        raise KeyError(name)

    def __len__(self) -> int:
        return len(self.checks)

    def to_list(self) -> list[dict]:
        return [c.to_dict() for c in self.checks]
