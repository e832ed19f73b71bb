"""Tabu search with recency memory, dynamic tenure and aspiration.

The n x n memory matrix stores, for a move (i, j) with i < j, the iteration
until which the move stays forbidden in cell [i][j] (upper triangle) and the
number of times the pair has been exchanged in cell [j][i] (lower triangle).
Frequency is recorded but never read by move selection.  A move is admissible
when it is not tabu or when it would strictly beat the best cost so far
(aspiration).  When no move is admissible the search stops prematurely.
"""

from __future__ import annotations

import csv
from dataclasses import dataclass, field
from typing import IO

import numpy as np

from . import core
from .backend import kernels
from .errors import DomainError, IntegrityError
from .instance import Instance, SolutionRecord
from .rng import SplitMix64


def default_iterations(n: int) -> int:
    return 8 * n


@dataclass(frozen=True)
class TenureInterval:
    low: int
    high: int

    def __post_init__(self):
        if not 1 <= self.low <= self.high:
            raise DomainError(f"invalid tenure interval [{self.low}, {self.high}]")


def tenure_bounds(n: int) -> TenureInterval:
    """Dynamic tenure interval [0.1*n, 0.33*n], floor/ceil, clamped non-empty."""
    if n < 2:
        raise DomainError(f"need n >= 2, got {n}")
    low = max(1, n // 10)
    high = max(low, (33 * n + 99) // 100)
    return TenureInterval(low, high)


def sample_tenure(interval: TenureInterval, rng: SplitMix64) -> int:
    """Uniform integer tenure in [low, high], inclusive."""
    return rng.randint(interval.low, interval.high)


def new_tabu_matrix(n: int) -> np.ndarray:
    return np.zeros((n, n), dtype=np.int64)


def is_admissible(
    tabu: np.ndarray,
    move: core.Move,
    candidate_cost: int,
    best_cost: int,
    iteration: int,
) -> bool:
    """Not tabu (expiry <= current iteration) or aspirated (strictly beats best).

    Reads only the recency cell [i][j], i < j; the frequency triangle never
    influences admissibility.
    """
    i, j = move
    if not i < j:
        raise DomainError(f"move ({i}, {j}) is not canonical")
    return bool(tabu[i, j] <= iteration) or candidate_cost < best_cost


@dataclass(frozen=True)
class TabuState:
    current: np.ndarray
    current_cost: int
    best: np.ndarray
    best_cost: int
    iteration: int  # counter of the next iteration to run, starting at 1
    tabu: np.ndarray
    tenure: TenureInterval
    stopped_early: bool = False


def initial_tabu_state(
    inst: Instance, perm: np.ndarray, tenure: TenureInterval | None = None
) -> TabuState:
    cost = core.full_cost(inst, perm)
    return TabuState(
        current=perm.copy(),
        current_cost=cost,
        best=perm.copy(),
        best_cost=cost,
        iteration=1,
        tabu=new_tabu_matrix(inst.n),
        tenure=tenure or tenure_bounds(inst.n),
    )


def tabu_step(inst: Instance, state: TabuState, rng: SplitMix64) -> TabuState:
    """Select the lowest-delta admissible move, apply it, update the memory."""
    if state.stopped_early:
        return state
    c = state.iteration
    deltas = core.all_deltas(inst, state.current)
    moves = core.enumerate_moves(inst.n)
    iu, ju = np.triu_indices(inst.n, k=1)
    not_tabu = state.tabu[iu, ju] <= c
    admissible = not_tabu | (state.current_cost + deltas < state.best_cost)
    idx = np.flatnonzero(admissible)
    if idx.size == 0:
        return TabuState(
            current=state.current,
            current_cost=state.current_cost,
            best=state.best,
            best_cost=state.best_cost,
            iteration=c,
            tabu=state.tabu,
            tenure=state.tenure,
            stopped_early=True,
        )
    k = int(idx[np.argmin(deltas[idx])])  # next-lowest-cost scan, lexicographic ties
    move = moves[k]
    i, j = move
    cost = state.current_cost + int(deltas[k])
    current = core.apply_move(state.current, move)
    t = sample_tenure(state.tenure, rng)
    cells = state.tabu.copy()
    cells[i, j] = c + t
    cells[j, i] += 1
    improved = cost < state.best_cost
    return TabuState(
        current=current,
        current_cost=cost,
        best=current.copy() if improved else state.best,
        best_cost=cost if improved else state.best_cost,
        iteration=c + 1,
        tabu=cells,
        tenure=state.tenure,
    )


@dataclass
class TabuTrail:
    """Per-iteration audit record of one tabu run, replayable offline."""

    instance_name: str
    initial_permutation: np.ndarray
    tenure: TenureInterval
    iterations_requested: int
    stopped_early: bool
    move_i: np.ndarray
    move_j: np.ndarray
    delta: np.ndarray
    tabu_flag: np.ndarray
    aspirated_flag: np.ndarray
    tenure_drawn: np.ndarray
    final_tabu: np.ndarray = field(repr=False, default=None)

    def __len__(self) -> int:
        return len(self.move_i)


def run_tabu(
    inst: Instance,
    seed: int | SplitMix64,
    iterations: int | None = None,
    tenure: TenureInterval | None = None,
) -> tuple[SolutionRecord, TabuTrail]:
    """Random initial solution, tabu steps until the budget or a premature stop."""
    if iterations is None:
        iterations = default_iterations(inst.n)
    if iterations < 1:
        raise DomainError(f"iterations must be >= 1, got {iterations}")
    rng = seed if isinstance(seed, SplitMix64) else SplitMix64(seed)
    seed_repr = rng.state
    tenure = tenure or tenure_bounds(inst.n)
    start = core.random_permutation(inst.n, rng)
    # Pre-drawn so the compiled and pure backends consume the same stream;
    # tenures[c-1] belongs to the move accepted at iteration c.
    tenures = np.array(
        [sample_tenure(tenure, rng) for _ in range(iterations)], dtype=np.int64
    )
    best, best_cost, _, _, cells, stopped_early, steps_done, trail_arrays = kernels.tabu_run(
        inst.flow, inst.distance, start, iterations, tenures
    )
    t_i, t_j, t_delta, t_tabu, t_asp, t_ten = trail_arrays
    record = SolutionRecord(
        instance_name=inst.name,
        permutation=best,
        cost=int(best_cost),
        algorithm="tabu",
        seed=seed_repr,
    )
    trail = TabuTrail(
        instance_name=inst.name,
        initial_permutation=start,
        tenure=tenure,
        iterations_requested=iterations,
        stopped_early=bool(stopped_early),
        move_i=t_i,
        move_j=t_j,
        delta=t_delta,
        tabu_flag=t_tabu,
        aspirated_flag=t_asp,
        tenure_drawn=t_ten,
        final_tabu=cells,
    )
    return record, trail


TRAIL_HEADER = ["iter", "i", "j", "delta", "tabu_flag", "aspirated_flag", "tenure_drawn"]


def write_trail(trail: TabuTrail, sink: IO[str]) -> None:
    """Serialize a trail as CSV; positions are rendered 1-based."""
    writer = csv.writer(sink, lineterminator="\n")
    writer.writerow(TRAIL_HEADER)
    for s in range(len(trail)):
        writer.writerow(
            [
                s + 1,
                int(trail.move_i[s]) + 1,
                int(trail.move_j[s]) + 1,
                int(trail.delta[s]),
                int(trail.tabu_flag[s]),
                int(trail.aspirated_flag[s]),
                int(trail.tenure_drawn[s]),
            ]
        )


def replay_and_audit(inst: Instance, trail: TabuTrail) -> SolutionRecord:
    """Re-execute a trail move by move, verifying every invariant.

    Checks, per iteration c: the recorded delta equals an independent O(n)
    recompute, the move was admissible under is_admissible, the tenure lies in
    the configured interval and the recency cell was written as c + t.  After
    the replay, frequency cells must equal the per-pair move counts and the
    best cost must never have increased.  Returns the replayed best record.
    """
    perm = trail.initial_permutation.copy()
    cost = core.full_cost(inst, perm)
    best = perm.copy()
    best_cost = cost
    cells = new_tabu_matrix(inst.n)
    counts = np.zeros((inst.n, inst.n), dtype=np.int64)
    for s in range(len(trail)):
        c = s + 1
        i, j = int(trail.move_i[s]), int(trail.move_j[s])
        move = (i, j)
        dlt = core.delta_cost(inst, perm, move)
        if dlt != int(trail.delta[s]):
            raise IntegrityError(f"iteration {c}: recorded delta {trail.delta[s]}, recomputed {dlt}")
        candidate = cost + dlt
        if not is_admissible(cells, move, candidate, best_cost, c):
            raise IntegrityError(f"iteration {c}: move ({i}, {j}) was not admissible")
        was_tabu = bool(cells[i, j] > c)
        if was_tabu != bool(trail.tabu_flag[s]):
            raise IntegrityError(f"iteration {c}: tabu flag mismatch")
        if bool(trail.aspirated_flag[s]) and not (was_tabu and candidate < best_cost):
            raise IntegrityError(f"iteration {c}: aspiration flag not justified")
        t = int(trail.tenure_drawn[s])
        if not trail.tenure.low <= t <= trail.tenure.high:
            raise IntegrityError(f"iteration {c}: tenure {t} outside {trail.tenure}")
        perm = core.apply_move(perm, move)
        cost = candidate
        cells[i, j] = c + t
        cells[j, i] += 1
        counts[j, i] += 1
        if cost < best_cost:
            best_cost = cost
            best = perm.copy()
    if trail.final_tabu is not None:
        freq = np.tril(trail.final_tabu, k=-1)
        if not np.array_equal(freq, counts):
            raise IntegrityError("frequency triangle does not match trail move counts")
    return SolutionRecord(
        instance_name=inst.name, permutation=best, cost=int(best_cost), algorithm="tabu"
    )
