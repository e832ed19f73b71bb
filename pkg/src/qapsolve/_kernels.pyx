# cython: boundscheck=False, wraparound=False, initializedcheck=False, cdivision=True
"""Compiled hot kernels: full cost, batch delta evaluation, search inner loops.

Contracts are identical to _purekernels.py (exact int64 arithmetic, same move
ordering and tie-breaks); tests assert bit-identical results across the two
backends.
"""

import numpy as np

cimport numpy as cnp

BACKEND_NAME = "c"

ctypedef long long i64


cdef i64 _full_cost(const i64[:, ::1] f, const i64[:, ::1] d, const i64[::1] p) noexcept nogil:
    cdef Py_ssize_t n = p.shape[0], i, j
    cdef i64 total = 0
    for i in range(n):
        for j in range(n):
            total += f[p[i], p[j]] * d[i, j]
    return total


cdef i64 _delta(const i64[:, ::1] f, const i64[:, ::1] d, const i64[::1] p,
                Py_ssize_t i, Py_ssize_t j) noexcept nogil:
    # Linear-time exchange delta; the diagonal term vanishes for the usual
    # zero-diagonal matrices but keeps the formula exact in general.
    cdef Py_ssize_t n = p.shape[0], k
    cdef i64 pi = p[i], pj = p[j], pk
    cdef i64 dlt = (d[j, i] - d[i, j]) * (f[pi, pj] - f[pj, pi]) \
        + (f[pj, pj] - f[pi, pi]) * (d[i, i] - d[j, j])
    for k in range(n):
        if k == i or k == j:
            continue
        pk = p[k]
        dlt += (d[j, k] - d[i, k]) * (f[pi, pk] - f[pj, pk]) \
            + (d[k, j] - d[k, i]) * (f[pk, pi] - f[pk, pj])
    return dlt


cdef inline _as_matrix(object a):
    return np.ascontiguousarray(a, dtype=np.int64)


def full_cost(flow, dist, perm):
    cdef const i64[:, ::1] f = _as_matrix(flow)
    cdef const i64[:, ::1] d = _as_matrix(dist)
    cdef const i64[::1] p = np.ascontiguousarray(perm, dtype=np.int64)
    cdef i64 total
    with nogil:
        total = _full_cost(f, d, p)
    return int(total)


def all_deltas(flow, dist, perm):
    cdef const i64[:, ::1] f = _as_matrix(flow)
    cdef const i64[:, ::1] d = _as_matrix(dist)
    cdef const i64[::1] p = np.ascontiguousarray(perm, dtype=np.int64)
    cdef Py_ssize_t n = p.shape[0], i, j, k = 0
    out = np.empty(n * (n - 1) // 2, dtype=np.int64)
    cdef i64[::1] o = out
    with nogil:
        for i in range(n - 1):
            for j in range(i + 1, n):
                o[k] = _delta(f, d, p, i, j)
                k += 1
    return out


def two_opt_run(flow, dist, perm, int iterations):
    """See _purekernels.two_opt_run."""
    cdef const i64[:, ::1] f = _as_matrix(flow)
    cdef const i64[:, ::1] d = _as_matrix(dist)
    p_arr = np.ascontiguousarray(perm, dtype=np.int64).copy()
    cdef i64[::1] p = p_arr
    cdef Py_ssize_t n = p.shape[0], i, j, bi, bj, step
    cdef i64 cost, best_cost, dlt, bd, tmp

    cost = _full_cost(f, d, p)
    best_arr = p_arr.copy()
    cdef i64[::1] best = best_arr
    best_cost = cost

    mi_arr = np.empty(iterations, dtype=np.int64)
    mj_arr = np.empty(iterations, dtype=np.int64)
    md_arr = np.empty(iterations, dtype=np.int64)
    cdef i64[::1] mi = mi_arr
    cdef i64[::1] mj = mj_arr
    cdef i64[::1] md = md_arr

    with nogil:
        for step in range(iterations):
            bi = 0
            bj = 1
            bd = _delta(f, d, p, 0, 1)
            for i in range(n - 1):
                for j in range(i + 1, n):
                    if i == 0 and j == 1:
                        continue
                    dlt = _delta(f, d, p, i, j)
                    if dlt < bd:
                        bd = dlt
                        bi = i
                        bj = j
            tmp = p[bi]
            p[bi] = p[bj]
            p[bj] = tmp
            cost += bd
            if cost < best_cost:
                best_cost = cost
                best[:] = p
            mi[step] = bi
            mj[step] = bj
            md[step] = bd
    return best_arr, int(best_cost), p_arr, int(cost), mi_arr, mj_arr, md_arr


def tabu_run(flow, dist, perm, int iterations, tenures):
    """See _purekernels.tabu_run."""
    cdef const i64[:, ::1] f = _as_matrix(flow)
    cdef const i64[:, ::1] d = _as_matrix(dist)
    p_arr = np.ascontiguousarray(perm, dtype=np.int64).copy()
    cdef i64[::1] p = p_arr
    cdef const i64[::1] ten = np.ascontiguousarray(tenures, dtype=np.int64)
    cdef Py_ssize_t n = p.shape[0], i, j, bi, bj, c, steps_done = 0
    cdef i64 cost, best_cost, dlt, bd, t, tmp
    cdef bint found, stopped_early = False, was_tabu

    cost = _full_cost(f, d, p)
    best_arr = p_arr.copy()
    cdef i64[::1] best = best_arr
    best_cost = cost

    cells_arr = np.zeros((n, n), dtype=np.int64)
    cdef i64[:, ::1] cells = cells_arr

    ti_arr = np.empty(iterations, dtype=np.int64)
    tj_arr = np.empty(iterations, dtype=np.int64)
    td_arr = np.empty(iterations, dtype=np.int64)
    tt_arr = np.empty(iterations, dtype=np.int64)
    ta_arr = np.empty(iterations, dtype=np.int64)
    tn_arr = np.empty(iterations, dtype=np.int64)
    cdef i64[::1] ti = ti_arr
    cdef i64[::1] tj = tj_arr
    cdef i64[::1] td = td_arr
    cdef i64[::1] tt = tt_arr
    cdef i64[::1] ta = ta_arr
    cdef i64[::1] tn = tn_arr

    with nogil:
        for c in range(1, iterations + 1):
            found = False
            bi = 0
            bj = 0
            bd = 0
            for i in range(n - 1):
                for j in range(i + 1, n):
                    dlt = _delta(f, d, p, i, j)
                    if cells[i, j] <= c or cost + dlt < best_cost:
                        if not found or dlt < bd:
                            found = True
                            bd = dlt
                            bi = i
                            bj = j
            if not found:
                stopped_early = True
                break
            was_tabu = cells[bi, bj] > c
            tmp = p[bi]
            p[bi] = p[bj]
            p[bj] = tmp
            cost += bd
            t = ten[c - 1]
            cells[bi, bj] = c + t
            cells[bj, bi] += 1
            if cost < best_cost:
                best_cost = cost
                best[:] = p
            ti[c - 1] = bi
            tj[c - 1] = bj
            td[c - 1] = bd
            tt[c - 1] = 1 if was_tabu else 0
            ta[c - 1] = 1 if was_tabu else 0
            tn[c - 1] = t
            steps_done = c
    trail = (
        ti_arr[:steps_done].copy(),
        tj_arr[:steps_done].copy(),
        td_arr[:steps_done].copy(),
        tt_arr[:steps_done].copy(),
        ta_arr[:steps_done].copy(),
        tn_arr[:steps_done].copy(),
    )
    return best_arr, int(best_cost), p_arr, int(cost), cells_arr, stopped_early, steps_done, trail
