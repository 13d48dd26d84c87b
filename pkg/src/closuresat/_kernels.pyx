# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled closure kernels; same API and results as ``_pykernels``."""

from libc.stdlib cimport malloc, calloc, free
from libc.string cimport memcpy, memset

BACKEND = "compiled"


cdef inline void _cover(int u, const int[:] cl_start, const int[:] cl_lits,
                        const int[:] occ_start, const int[:] occ_cls,
                        int* unc, char* covered) noexcept nogil:
    cdef int k, j, c
    for k in range(occ_start[u], occ_start[u + 1]):
        c = occ_cls[k]
        if not covered[c]:
            covered[c] = 1
            for j in range(cl_start[c], cl_start[c + 1]):
                unc[cl_lits[j]] -= 1


cdef int _next_stage(int n_lits, int banned, const int* unc, const char* in_s,
                     int* out) noexcept nogil:
    cdef int u, n = 0
    for u in range(n_lits):
        if not in_s[u] and u != banned and unc[u] and not unc[u ^ 1]:
            out[n] = u
            n += 1
    return n


def closure_stages(const int[:] cl_start, const int[:] cl_lits,
                   const int[:] occ_start, const int[:] occ_cls,
                   int n_lits, int seed):
    cdef int n_clauses = cl_start.shape[0] - 1
    cdef int i, n, banned = -1
    cdef int* unc = <int*> malloc((n_lits + 1) * sizeof(int))
    cdef int* buf = <int*> malloc((n_lits + 1) * sizeof(int))
    cdef char* covered = <char*> calloc(n_clauses + 1, 1)
    cdef char* in_s = <char*> calloc(n_lits + 1, 1)
    if not unc or not buf or not covered or not in_s:
        free(unc); free(buf); free(covered); free(in_s)
        raise MemoryError()
    added = []
    try:
        for i in range(n_lits):
            unc[i] = occ_start[i + 1] - occ_start[i]
        if seed >= 0:
            in_s[seed] = 1
            banned = seed ^ 1
            _cover(seed, cl_start, cl_lits, occ_start, occ_cls, unc, covered)
        while True:
            n = _next_stage(n_lits, banned, unc, in_s, buf)
            if n == 0:
                break
            for i in range(n):
                in_s[buf[i]] = 1
            for i in range(n):
                _cover(buf[i], cl_start, cl_lits, occ_start, occ_cls, unc, covered)
            added.append([buf[i] for i in range(n)])
        return added, [i for i in range(n_clauses) if covered[i]]
    finally:
        free(unc); free(buf); free(covered); free(in_s)


def first_redundant(const int[:] cl_start, const int[:] cl_lits,
                    const int[:] occ_start, const int[:] occ_cls,
                    int n_lits, const int[:] order):
    cdef int n_clauses = cl_start.shape[0] - 1
    cdef int i, n, t, seed, banned, found = -1
    cdef int* base = <int*> malloc((n_lits + 1) * sizeof(int))
    cdef int* unc = <int*> malloc((n_lits + 1) * sizeof(int))
    cdef int* buf = <int*> malloc((n_lits + 1) * sizeof(int))
    cdef char* covered = <char*> malloc(n_clauses + 1)
    cdef char* in_s = <char*> malloc(n_lits + 1)
    if not base or not unc or not buf or not covered or not in_s:
        free(base); free(unc); free(buf); free(covered); free(in_s)
        raise MemoryError()
    with nogil:
        for i in range(n_lits):
            base[i] = occ_start[i + 1] - occ_start[i]
        for t in range(order.shape[0]):
            seed = order[t]
            banned = seed ^ 1
            memcpy(unc, base, n_lits * sizeof(int))
            memset(covered, 0, n_clauses)
            memset(in_s, 0, n_lits)
            in_s[seed] = 1
            _cover(seed, cl_start, cl_lits, occ_start, occ_cls, unc, covered)
            while unc[banned]:
                n = _next_stage(n_lits, banned, unc, in_s, buf)
                if n == 0:
                    break
                for i in range(n):
                    in_s[buf[i]] = 1
                for i in range(n):
                    _cover(buf[i], cl_start, cl_lits, occ_start, occ_cls, unc, covered)
            if not unc[banned]:
                found = seed
                break
    free(base); free(unc); free(buf); free(covered); free(in_s)
    return found
