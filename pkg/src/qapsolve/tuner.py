"""Launch-configuration space enumeration and parameter sweep plans.

The (N, t, b) configuration set mirrors the three-dimensional tuning space of
GPU-style launches: N starts split into b blocks of t threads, everything in
warp (32) multiples, 1024 <= N <= 12288 and 32 <= t <= 1024.  (The source
material prints both ranges with inverted inequalities; the corrected reading
is the only one under which the set is non-empty.)  On this CPU artifact the
enumerator parameterizes sweeps; execution itself uses a flat worker pool.
"""

from __future__ import annotations

import csv
from dataclasses import dataclass
from typing import IO, Iterator

from .errors import DomainError
from .multistart import SearchConfig

N_STARTS_MIN, N_STARTS_MAX = 1024, 12288
THREADS_MIN, THREADS_MAX = 32, 1024
WARP = 32

SWEEP_AXES = ("neighborhoods", "instances", "seeds")
MAX_SWEEP_INSTANCES = 1024


@dataclass(frozen=True)
class ThreadConfig:
    n_starts: int
    threads_per_block: int
    blocks: int


def validate_config(c: ThreadConfig) -> tuple[bool, list[str]]:
    """Check every constraint; violations name the failed rule."""
    violations = []
    if not N_STARTS_MIN <= c.n_starts <= N_STARTS_MAX:
        violations.append(
            f"n_starts {c.n_starts} outside [{N_STARTS_MIN}, {N_STARTS_MAX}]"
        )
    if c.n_starts % WARP != 0:
        violations.append(f"n_starts {c.n_starts} not a multiple of warp size {WARP}")
    if not THREADS_MIN <= c.threads_per_block <= THREADS_MAX:
        violations.append(
            f"threads_per_block {c.threads_per_block} outside [{THREADS_MIN}, {THREADS_MAX}]"
        )
    if c.threads_per_block % WARP != 0:
        violations.append(
            f"threads_per_block {c.threads_per_block} not a multiple of warp size {WARP}"
        )
    if c.threads_per_block <= 0 or c.n_starts % c.threads_per_block != 0:
        violations.append(
            f"n_starts {c.n_starts} not divisible by threads_per_block {c.threads_per_block}"
        )
    elif c.blocks != c.n_starts // c.threads_per_block:
        violations.append(
            f"blocks {c.blocks} != n_starts / threads_per_block "
            f"({c.n_starts // c.threads_per_block})"
        )
    return not violations, violations


def enumerate_configs(n_starts_filter: int | None = None) -> list[ThreadConfig]:
    """All valid (N, t, b) triples ordered by (N, t)."""
    configs = []
    n_values = (
        [n_starts_filter]
        if n_starts_filter is not None
        else range(N_STARTS_MIN, N_STARTS_MAX + 1, WARP)
    )
    for n in n_values:
        if not (N_STARTS_MIN <= n <= N_STARTS_MAX and n % WARP == 0):
            continue
        for t in range(THREADS_MIN, THREADS_MAX + 1, WARP):
            if n % t == 0:
                configs.append(ThreadConfig(n, t, n // t))
    return configs


@dataclass(frozen=True)
class SweepPlan:
    axis: str
    values: tuple[int, ...]
    base: SearchConfig


def make_sweep(axis: str, values: list[int], base: SearchConfig) -> SweepPlan:
    """Validate a sweep over iteration count, start count or seed count."""
    if axis not in SWEEP_AXES:
        raise DomainError(f"unknown sweep axis {axis!r}; expected one of {SWEEP_AXES}")
    if not values:
        raise DomainError("sweep values must be non-empty")
    if any(v <= 0 for v in values):
        raise DomainError("sweep values must be positive")
    if list(values) != sorted(set(values)):
        raise DomainError("sweep values must be strictly increasing")
    if axis == "instances":
        for v in values:
            if v & (v - 1) != 0:
                raise DomainError(f"instances axis requires powers of two, got {v}")
            if v > MAX_SWEEP_INSTANCES:
                raise DomainError(
                    f"instances axis is bounded at {MAX_SWEEP_INSTANCES}, got {v}"
                )
    return SweepPlan(axis=axis, values=tuple(values), base=base)


def expand(plan: SweepPlan, repetitions: int) -> Iterator[tuple[int, int, int]]:
    """Yield (axis_value, repetition, master_seed) for every planned run."""
    for value in plan.values:
        for rep in range(repetitions):
            yield value, rep, plan.base.master_seed + rep


def write_plan(plan: SweepPlan, repetitions: int, sink: IO[str]) -> None:
    writer = csv.writer(sink, lineterminator="\n")
    writer.writerow(["axis", "value", "master_seed", "repetition"])
    for value, rep, seed in expand(plan, repetitions):
        writer.writerow([plan.axis, value, seed, rep])
