"""Accuracy metric and per-instance benchmark reports.

Accuracy is the exact rational gap (best cost over the repetitions minus the
best-known cost) / best-known cost; 0 means the best-known cost was matched.
The minimum over repetitions is used, never the mean.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import DomainError


def accuracy(best_cost_from_runs: int, best_known: int) -> Fraction:
    if best_known <= 0:
        raise DomainError(f"best_known must be positive, got {best_known}")
    return Fraction(best_cost_from_runs - best_known, best_known)


def format_accuracy(value: Fraction) -> str:
    return f"{float(value):.6f}"


@dataclass
class RunReport:
    instance_name: str
    algorithm: str
    best_cost: int
    best_known: int | None
    per_run_costs: list[int]
    wall_times: list[float]
    config_digest: str

    @property
    def accuracy(self) -> Fraction | None:
        if self.best_known is None:
            return None
        return accuracy(min(self.per_run_costs), self.best_known)
