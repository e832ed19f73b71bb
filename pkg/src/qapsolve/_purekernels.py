"""Pure-Python (numpy) fallback for the hot kernels.

Same contracts as the compiled extension in _kernels.pyx: exact int64
arithmetic, identical move ordering and tie-breaks, bit-identical results.
The batch delta evaluation is expressed through integer matrix products so a
whole neighborhood costs two n*n matmuls instead of n^2 Python-level loops.
"""

from __future__ import annotations

import numpy as np

BACKEND_NAME = "python"


def full_cost(flow: np.ndarray, dist: np.ndarray, perm: np.ndarray) -> int:
    p = perm
    return int(np.sum(flow[np.ix_(p, p)] * dist, dtype=np.int64))


def _pair_index(n: int) -> tuple[np.ndarray, np.ndarray]:
    return np.triu_indices(n, k=1)


def all_deltas(flow: np.ndarray, dist: np.ndarray, perm: np.ndarray) -> np.ndarray:
    """Exact cost change of every pairwise exchange, lexicographic (i, j) order.

    Linear-time-per-move exchange formula in batch form: for the pair (i, j)
    the change splits into a direct term, row/column sums over k (taken over
    all k via the products P = D Fp^T and Q = D^T Fp, then the k = i and k = j
    contributions are subtracted), and a diagonal term that vanishes when
    either matrix has a constant diagonal.
    """
    d = dist
    p = perm
    n = len(p)
    fp = flow[np.ix_(p, p)]

    P = d @ fp.T
    Q = d.T @ fp
    dP = np.diagonal(P).copy()
    dQ = np.diagonal(Q).copy()
    dd = np.diagonal(d).copy()
    fd = np.diagonal(fp).copy()

    row_full = P.T + P - dP[:, None] - dP[None, :]
    col_full = Q.T + Q - dQ[:, None] - dQ[None, :]
    # k = i and k = j contributions, excluded from the pair sums:
    k_eq_i = (d.T - dd[:, None]) * (fd[:, None] - fp.T) + (d - dd[:, None]) * (fd[:, None] - fp)
    k_eq_j = (dd[None, :] - d) * (fp - fd[None, :]) + (dd[None, :] - d.T) * (fp.T - fd[None, :])
    direct = (d.T - d) * (fp - fp.T)
    diag = (fd[None, :] - fd[:, None]) * (dd[:, None] - dd[None, :])

    delta = direct + row_full + col_full - k_eq_i - k_eq_j + diag
    iu, ju = _pair_index(n)
    return np.ascontiguousarray(delta[iu, ju])


def two_opt_run(
    flow: np.ndarray, dist: np.ndarray, perm: np.ndarray, iterations: int
):
    """Full-neighborhood best-move descent with unconditional acceptance.

    Returns (best, best_cost, current, current_cost, move_i, move_j, move_delta).
    """
    n = len(perm)
    iu, ju = _pair_index(n)
    p = perm.copy()
    cost = full_cost(flow, dist, p)
    best = p.copy()
    best_cost = cost
    move_i = np.empty(iterations, dtype=np.int64)
    move_j = np.empty(iterations, dtype=np.int64)
    move_delta = np.empty(iterations, dtype=np.int64)
    for step in range(iterations):
        deltas = all_deltas(flow, dist, p)
        k = int(np.argmin(deltas))  # first occurrence = lexicographic tie-break
        i, j, dlt = int(iu[k]), int(ju[k]), int(deltas[k])
        p[i], p[j] = p[j], p[i]
        cost += dlt
        if cost < best_cost:
            best_cost = cost
            best = p.copy()
        move_i[step] = i
        move_j[step] = j
        move_delta[step] = dlt
    return best, best_cost, p, cost, move_i, move_j, move_delta


def tabu_run(
    flow: np.ndarray,
    dist: np.ndarray,
    perm: np.ndarray,
    iterations: int,
    tenures: np.ndarray,
):
    """Best-admissible-neighbor tabu search with recency memory and aspiration.

    tenures[c-1] is the tenure applied to the move accepted at iteration c
    (pre-drawn by the caller so the compiled and pure paths consume the same
    random stream).  Returns (best, best_cost, current, current_cost, cells,
    stopped_early, steps_done, trail) where trail is the tuple of per-step
    arrays (i, j, delta, tabu_flag, aspirated_flag, tenure).
    """
    n = len(perm)
    iu, ju = _pair_index(n)
    p = perm.copy()
    cost = full_cost(flow, dist, p)
    best = p.copy()
    best_cost = cost
    cells = np.zeros((n, n), dtype=np.int64)
    t_i = np.empty(iterations, dtype=np.int64)
    t_j = np.empty(iterations, dtype=np.int64)
    t_delta = np.empty(iterations, dtype=np.int64)
    t_tabu = np.empty(iterations, dtype=np.int64)
    t_asp = np.empty(iterations, dtype=np.int64)
    t_ten = np.empty(iterations, dtype=np.int64)
    stopped_early = False
    steps_done = 0
    for c in range(1, iterations + 1):
        deltas = all_deltas(flow, dist, p)
        not_tabu = cells[iu, ju] <= c
        admissible = not_tabu | (cost + deltas < best_cost)
        idx = np.flatnonzero(admissible)
        if idx.size == 0:
            stopped_early = True
            break
        k = int(idx[np.argmin(deltas[idx])])  # lowest delta, lexicographic ties
        i, j, dlt = int(iu[k]), int(ju[k]), int(deltas[k])
        was_tabu = not bool(not_tabu[k])
        p[i], p[j] = p[j], p[i]
        cost += dlt
        t = int(tenures[c - 1])
        cells[i, j] = c + t
        cells[j, i] += 1
        if cost < best_cost:
            best_cost = cost
            best = p.copy()
        s = c - 1
        t_i[s] = i
        t_j[s] = j
        t_delta[s] = dlt
        t_tabu[s] = 1 if was_tabu else 0
        t_asp[s] = 1 if was_tabu else 0  # chosen while tabu implies aspiration
        t_ten[s] = t
        steps_done = c
    trail = tuple(a[:steps_done].copy() for a in (t_i, t_j, t_delta, t_tabu, t_asp, t_ten))
    return best, best_cost, p, cost, cells, stopped_early, steps_done, trail
