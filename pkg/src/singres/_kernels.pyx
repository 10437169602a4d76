# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled exact-change minimum-cost table.  Mirrors ``_kernels_py``."""
from libc.stdlib cimport malloc, free


def min_cost_change(coins, costs, long long limit):
    cdef Py_ssize_t k = len(coins)
    cdef Py_ssize_t j
    cdef long long t, prev, cand
    if limit < 0:
        return [], []
    cdef long long *c = <long long *> malloc(k * sizeof(long long))
    cdef long long *w = <long long *> malloc(k * sizeof(long long))
    cdef long long *best = <long long *> malloc((limit + 1) * sizeof(long long))
    cdef int *choice = <int *> malloc((limit + 1) * sizeof(int))
    if c == NULL or w == NULL or best == NULL or choice == NULL:
        free(c); free(w); free(best); free(choice)
        raise MemoryError()
    try:
        for j in range(k):
            c[j] = coins[j]
            w[j] = costs[j]
        best[0] = 0
        choice[0] = -1
        for t in range(1, limit + 1):
            best[t] = -1
            choice[t] = -1
            for j in range(k):
                if c[j] <= t:
                    prev = best[t - c[j]]
                    if prev >= 0:
                        cand = prev + w[j]
                        if best[t] < 0 or cand < best[t]:
                            best[t] = cand
                            choice[t] = <int> j
        return [best[t] for t in range(limit + 1)], [choice[t] for t in range(limit + 1)]
    finally:
        free(c); free(w); free(best); free(choice)
