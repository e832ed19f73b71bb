"""Launch N independent searches across a process pool, reduce to the minimum.

Every start owns a generator state derived injectively from (master_seed,
start_index), so the outcome is a pure function of instance and config: any
worker count, chunking or scheduling order produces bit-identical results.
Reduction takes the minimum cost, ties broken by lowest start index.
"""

from __future__ import annotations

import hashlib
import json
import multiprocessing
import os
import time
from dataclasses import dataclass, field

import numpy as np

from .errors import DomainError, QapError
from .instance import Instance, SolutionRecord
from .rng import SplitMix64, derive_seed
from .tabu import TenureInterval, run_tabu
from .two_opt import run_two_opt
from . import tabu as tabu_mod
from . import two_opt as two_opt_mod

ALGORITHMS = ("2opt", "tabu")


@dataclass(frozen=True)
class SearchConfig:
    algorithm: str = "tabu"
    n_starts: int = 6144
    iterations: int | None = None  # default: 4n for 2opt, 8n for tabu
    tenure: TenureInterval | None = None
    master_seed: int = 0
    workers: int | str = "auto"

    def __post_init__(self):
        if self.algorithm not in ALGORITHMS:
            raise DomainError(f"unknown algorithm {self.algorithm!r}")
        if self.n_starts < 1:
            raise DomainError(f"n_starts must be >= 1, got {self.n_starts}")
        if self.iterations is not None and self.iterations < 1:
            raise DomainError(f"iterations must be >= 1, got {self.iterations}")

    def resolved_iterations(self, n: int) -> int:
        if self.iterations is not None:
            return self.iterations
        mod = tabu_mod if self.algorithm == "tabu" else two_opt_mod
        return mod.default_iterations(n)

    def resolved_workers(self) -> int:
        if self.workers == "auto":
            return os.cpu_count() or 1
        workers = int(self.workers)
        if workers < 1:
            raise DomainError(f"workers must be >= 1, got {workers}")
        return workers


def config_digest(inst: Instance, cfg: SearchConfig) -> str:
    """Digest of everything the result depends on (worker count excluded)."""
    payload = {
        "instance": inst.name,
        "n": inst.n,
        "algorithm": cfg.algorithm,
        "n_starts": cfg.n_starts,
        "iterations": cfg.resolved_iterations(inst.n),
        "tenure": [cfg.tenure.low, cfg.tenure.high] if cfg.tenure else None,
        "master_seed": cfg.master_seed,
    }
    return hashlib.sha256(json.dumps(payload, sort_keys=True).encode()).hexdigest()[:16]


@dataclass
class MultiStartResult:
    best: SolutionRecord
    per_start_costs: np.ndarray
    wall_time: float
    config_digest: str
    best_start_index: int = field(default=0)


def run_start(inst: Instance, cfg: SearchConfig, index: int) -> SolutionRecord:
    """Run the single search owned by one start index (deterministic)."""
    rng = SplitMix64(derive_seed(cfg.master_seed, index))
    iterations = cfg.resolved_iterations(inst.n)
    if cfg.algorithm == "tabu":
        record, _ = run_tabu(inst, rng, iterations, cfg.tenure)
        return record
    return run_two_opt(inst, rng, iterations)


_POOL_STATE: dict = {}


def _init_worker(inst: Instance, cfg: SearchConfig) -> None:
    _POOL_STATE["inst"] = inst
    _POOL_STATE["cfg"] = cfg


def _run_chunk(bounds: tuple[int, int]):
    inst, cfg = _POOL_STATE["inst"], _POOL_STATE["cfg"]
    start, stop = bounds
    costs = np.empty(stop - start, dtype=np.int64)
    best_cost = None
    best_index = -1
    best_perm = None
    for index in range(start, stop):
        record = run_start(inst, cfg, index)
        costs[index - start] = record.cost
        if best_cost is None or record.cost < best_cost:
            best_cost = record.cost
            best_index = index
            best_perm = record.permutation
    return start, costs, best_index, best_cost, best_perm


def run_multistart(inst: Instance, cfg: SearchConfig) -> MultiStartResult:
    """Run cfg.n_starts independent searches and reduce to the minimum cost."""
    t0 = time.perf_counter()
    workers = cfg.resolved_workers()
    n_starts = cfg.n_starts
    chunk = max(1, -(-n_starts // (workers * 4)))
    bounds = [(lo, min(lo + chunk, n_starts)) for lo in range(0, n_starts, chunk)]

    per_start = np.empty(n_starts, dtype=np.int64)
    winners: list[tuple[int, int, np.ndarray]] = []  # (cost, index, permutation)

    if workers == 1:
        _init_worker(inst, cfg)
        results = map(_run_chunk, bounds)
        completed = len(bounds)
        for start, costs, b_index, b_cost, b_perm in results:
            per_start[start : start + len(costs)] = costs
            winners.append((b_cost, b_index, b_perm))
    else:
        completed = 0
        with multiprocessing.Pool(
            processes=workers, initializer=_init_worker, initargs=(inst, cfg)
        ) as pool:
            try:
                for start, costs, b_index, b_cost, b_perm in pool.imap_unordered(
                    _run_chunk, bounds
                ):
                    per_start[start : start + len(costs)] = costs
                    winners.append((b_cost, b_index, b_perm))
                    completed += 1
            except Exception as exc:
                raise QapError(
                    f"worker pool failed after {completed}/{len(bounds)} chunks: {exc}"
                ) from exc

    best_cost, best_index, best_perm = min(winners, key=lambda w: (w[0], w[1]))
    digest = config_digest(inst, cfg)
    best = SolutionRecord(
        instance_name=inst.name,
        permutation=best_perm,
        cost=int(best_cost),
        algorithm=cfg.algorithm,
        seed=derive_seed(cfg.master_seed, best_index),
        config_digest=digest,
    )
    return MultiStartResult(
        best=best,
        per_start_costs=per_start,
        wall_time=time.perf_counter() - t0,
        config_digest=digest,
        best_start_index=int(best_index),
    )
