"""Best-move pairwise-exchange descent over the full neighborhood.

Each step evaluates all n*(n-1)/2 exchange deltas, applies the minimum-delta
move unconditionally (lexicographic tie-break) and tracks the best solution
seen.  Non-improving best moves are accepted, so the walk may cycle around a
local optimum; best-so-far tracking makes that harmless.
"""

from __future__ import annotations

from dataclasses import dataclass, replace

import numpy as np

from . import core
from .backend import kernels
from .errors import DomainError
from .instance import Instance, SolutionRecord
from .rng import SplitMix64


def default_iterations(n: int) -> int:
    return 4 * n


@dataclass(frozen=True)
class TwoOptState:
    current: np.ndarray
    current_cost: int
    best: np.ndarray
    best_cost: int
    iteration: int = 0


def initial_state(inst: Instance, perm: np.ndarray) -> TwoOptState:
    cost = core.full_cost(inst, perm)
    return TwoOptState(
        current=perm.copy(), current_cost=cost, best=perm.copy(), best_cost=cost
    )


def two_opt_step(inst: Instance, state: TwoOptState) -> TwoOptState:
    """One full neighborhood sweep: apply the best move, improving or not."""
    deltas = core.all_deltas(inst, state.current)
    k = int(np.argmin(deltas))  # first occurrence = lexicographic tie-break
    move = core.enumerate_moves(inst.n)[k]
    cost = state.current_cost + int(deltas[k])
    current = core.apply_move(state.current, move)
    if cost < state.best_cost:
        return TwoOptState(current, cost, current.copy(), cost, state.iteration + 1)
    return replace(state, current=current, current_cost=cost, iteration=state.iteration + 1)


def run_two_opt(
    inst: Instance,
    seed: int | SplitMix64,
    iterations: int | None = None,
) -> SolutionRecord:
    """Random initial solution, exactly `iterations` sweeps, best-so-far result."""
    if iterations is None:
        iterations = default_iterations(inst.n)
    if iterations < 1:
        raise DomainError(f"iterations must be >= 1, got {iterations}")
    rng = seed if isinstance(seed, SplitMix64) else SplitMix64(seed)
    seed_repr = rng.state
    start = core.random_permutation(inst.n, rng)
    best, best_cost, _, _, _, _, _ = kernels.two_opt_run(
        inst.flow, inst.distance, start, iterations
    )
    return SolutionRecord(
        instance_name=inst.name,
        permutation=best,
        cost=int(best_cost),
        algorithm="2opt",
        seed=seed_repr,
    )
