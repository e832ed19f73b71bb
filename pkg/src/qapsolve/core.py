"""Permutation representation, exact costs, exchange deltas, small-n oracle.

Permutations are 0-based numpy int64 arrays: perm[i] is the unit placed at
location i.  A move is a canonical pair (i, j) with i < j, the exchange of the
contents of locations i and j.  Moves enumerate in lexicographic order and all
tie-breaks are lexicographic, so every search is deterministic.
"""

from __future__ import annotations

import itertools

import numpy as np

from .backend import kernels
from .errors import DomainError
from .instance import Instance
from .rng import SplitMix64

Move = tuple[int, int]

EXHAUSTIVE_MAX_N = 10


def _check_move(n: int, move: Move) -> None:
    i, j = move
    if i == j:
        raise DomainError(f"({i}, {j}) is not a move: positions must differ")
    if not (0 <= i < j < n):
        raise DomainError(f"move ({i}, {j}) is not canonical for n={n} (need 0 <= i < j < n)")


def full_cost(inst: Instance, perm: np.ndarray) -> int:
    """Exact cost: sum over locations i, j of flow[perm_i, perm_j] * distance[i, j]."""
    if len(perm) != inst.n:
        raise DomainError(f"permutation size {len(perm)} != instance size {inst.n}")
    return kernels.full_cost(inst.flow, inst.distance, perm)


def delta_cost(inst: Instance, perm: np.ndarray, move: Move) -> int:
    """Exact cost change of applying move, in O(n).

    Sign contract: full_cost(apply_move(perm, move)) == full_cost(perm) + delta.
    """
    _check_move(inst.n, move)
    i, j = move
    f, d, p = inst.flow, inst.distance, perm
    pi, pj = p[i], p[j]
    direct = (d[j, i] - d[i, j]) * (f[pi, pj] - f[pj, pi])
    diag = (f[pj, pj] - f[pi, pi]) * (d[i, i] - d[j, j])
    dr = d[j, :] - d[i, :]
    fr = f[pi, p] - f[pj, p]
    dc = d[:, j] - d[:, i]
    fc = f[p, pi] - f[p, pj]
    total = int(dr @ fr) + int(dc @ fc)
    total -= int(dr[i] * fr[i] + dr[j] * fr[j] + dc[i] * fc[i] + dc[j] * fc[j])
    return int(direct) + int(diag) + total


def all_deltas(inst: Instance, perm: np.ndarray) -> np.ndarray:
    """Deltas of every canonical move, in enumerate_moves order."""
    return kernels.all_deltas(inst.flow, inst.distance, perm)


def apply_move(perm: np.ndarray, move: Move) -> np.ndarray:
    """New permutation with the contents of locations i and j exchanged."""
    _check_move(len(perm), move)
    i, j = move
    out = perm.copy()
    out[i], out[j] = out[j], out[i]
    return out


def enumerate_moves(n: int) -> list[Move]:
    """All n*(n-1)/2 canonical moves in lexicographic order."""
    if n < 2:
        raise DomainError(f"need n >= 2 to have moves, got {n}")
    return [(i, j) for i in range(n - 1) for j in range(i + 1, n)]


def random_permutation(n: int, rng: SplitMix64) -> np.ndarray:
    """Uniform random permutation of 0..n-1 (unbiased Fisher-Yates)."""
    if n < 2:
        raise DomainError(f"need n >= 2, got {n}")
    values = list(range(n))
    rng.shuffle(values)
    return np.array(values, dtype=np.int64)


def exhaustive_solve(inst: Instance) -> tuple[np.ndarray, int]:
    """Global optimum by enumerating all n! permutations (n <= 10 only).

    Ties break to the lexicographically smallest permutation.
    """
    if inst.n > EXHAUSTIVE_MAX_N:
        raise DomainError(
            f"exhaustive_solve is an oracle for n <= {EXHAUSTIVE_MAX_N}, got n={inst.n}"
        )
    flow, dist = inst.flow, inst.distance
    best_perm = None
    best_cost = None
    for perm in itertools.permutations(range(inst.n)):
        p = np.array(perm, dtype=np.int64)
        cost = kernels.full_cost(flow, dist, p)
        if best_cost is None or cost < best_cost:
            best_cost = cost
            best_perm = p
    return best_perm, int(best_cost)
