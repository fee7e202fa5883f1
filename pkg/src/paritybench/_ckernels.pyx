# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled graph kernels. Semantics mirror ``_pykernels`` exactly."""
import time

import numpy as np

cimport numpy as cnp
from libc.stdint cimport int64_t, int8_t

from .budget import MeasureTimeout

cnp.import_array()

cdef double INF = float("inf")
cdef int64_t POLL_MASK = 0xFFFF


cdef inline int _expired(double deadline) except -1:
    if deadline != INF and time.monotonic() > deadline:
        raise MeasureTimeout()
    return 0


def diameter(const int64_t[::1] indptr, const int64_t[::1] indices, double deadline=INF):
    cdef Py_ssize_t n = indptr.shape[0] - 1
    if n <= 0:
        return 0
    cdef int64_t[::1] stamp = np.full(n, -1, dtype=np.int64)
    cdef int64_t[::1] dist = np.zeros(n, dtype=np.int64)
    cdef int64_t[::1] queue = np.empty(n, dtype=np.int64)
    cdef int64_t s, u, w, du, head, tail, i, best = 0, pops = 0
    for s in range(n):
        _expired(deadline)
        stamp[s] = s
        dist[s] = 0
        queue[0] = s
        head = 0
        tail = 1
        while head < tail:
            u = queue[head]
            head += 1
            pops += 1
            if (pops & POLL_MASK) == 0:
                _expired(deadline)
            du = dist[u] + 1
            for i in range(indptr[u], indptr[u + 1]):
                w = indices[i]
                if stamp[w] != s:
                    stamp[w] = s
                    dist[w] = du
                    if du > best:
                        best = du
                    queue[tail] = w
                    tail += 1
    return best


def girth(const int64_t[::1] indptr, const int64_t[::1] indices, double deadline=INF):
    cdef Py_ssize_t n = indptr.shape[0] - 1
    cdef int64_t s, u, w, du, head, tail, i, best = 0, pops = 0
    cdef bint found
    for u in range(n):
        for i in range(indptr[u], indptr[u + 1]):
            if indices[i] == u:
                return 1
    if n <= 0:
        return 0
    cdef int64_t[::1] stamp = np.full(n, -1, dtype=np.int64)
    cdef int64_t[::1] dist = np.zeros(n, dtype=np.int64)
    cdef int64_t[::1] queue = np.empty(n, dtype=np.int64)
    for s in range(n):
        _expired(deadline)
        stamp[s] = s
        dist[s] = 0
        queue[0] = s
        head = 0
        tail = 1
        found = False
        while head < tail and not found:
            u = queue[head]
            head += 1
            pops += 1
            if (pops & POLL_MASK) == 0:
                _expired(deadline)
            du = dist[u] + 1
            if best and du >= best:
                break
            for i in range(indptr[u], indptr[u + 1]):
                w = indices[i]
                if w == s:
                    best = du
                    found = True
                    break
                if stamp[w] != s:
                    stamp[w] = s
                    dist[w] = du
                    queue[tail] = w
                    tail += 1
        if best == 2:
            break
    return best


def diamonds(const int64_t[::1] indptr, const int64_t[::1] indices,
             const int8_t[::1] owners, double deadline=INF):
    cdef Py_ssize_t n = indptr.shape[0] - 1
    if n <= 0:
        return 0, 0, 0
    cdef int64_t[::1] count_all = np.zeros(n, dtype=np.int64)
    cdef int64_t[::1] count_own = np.zeros(n, dtype=np.int64)
    cdef int64_t[::1] touched = np.empty(n, dtype=np.int64)
    cdef int64_t u, v, w, i, j, c, ntouched, t
    cdef int64_t total = 0, even = 0, odd = 0
    cdef int8_t owner_u
    cdef bint same
    for u in range(n):
        if (u & 0xFF) == 0:
            _expired(deadline)
        ntouched = 0
        owner_u = owners[u]
        for i in range(indptr[u], indptr[u + 1]):
            v = indices[i]
            same = owners[v] == owner_u
            for j in range(indptr[v], indptr[v + 1]):
                w = indices[j]
                if count_all[w] == 0:
                    touched[ntouched] = w
                    ntouched += 1
                count_all[w] += 1
                if same:
                    count_own[w] += 1
        for t in range(ntouched):
            w = touched[t]
            c = count_all[w]
            total += c * (c - 1) // 2
            c = count_own[w]
            if c > 1:
                if owner_u == 0:
                    even += c * (c - 1) // 2
                else:
                    odd += c * (c - 1) // 2
            count_all[w] = 0
            count_own[w] = 0
    return total, even, odd


def neighbourhoods(const int64_t[::1] indptr, const int64_t[::1] indices,
                   int64_t k, double deadline=INF):
    cdef Py_ssize_t n = indptr.shape[0] - 1
    sizes_arr = np.zeros(max(n, 0), dtype=np.int64)
    edges_arr = np.zeros(max(n, 0), dtype=np.int64)
    if n <= 0:
        return sizes_arr, edges_arr
    cdef int64_t[::1] sizes = sizes_arr
    cdef int64_t[::1] edge_counts = edges_arr
    cdef int64_t[::1] stamp = np.full(n, -1, dtype=np.int64)
    cdef int64_t[::1] dist = np.zeros(n, dtype=np.int64)
    cdef int64_t[::1] queue = np.empty(n, dtype=np.int64)
    cdef int64_t s, u, w, x, y, du, head, tail, i, t, m
    for s in range(n):
        if (s & 0xFF) == 0:
            _expired(deadline)
        stamp[s] = s
        dist[s] = 0
        queue[0] = s
        head = 0
        tail = 1
        while head < tail:
            u = queue[head]
            head += 1
            du = dist[u]
            if du == k:
                continue
            for i in range(indptr[u], indptr[u + 1]):
                w = indices[i]
                if stamp[w] != s:
                    stamp[w] = s
                    dist[w] = du + 1
                    queue[tail] = w
                    tail += 1
        # queue[1:tail] holds N_k(s) in discovery order
        m = 0
        for t in range(1, tail):
            x = queue[t]
            for i in range(indptr[x], indptr[x + 1]):
                y = indices[i]
                if stamp[y] == s and y != s:
                    m += 1
        sizes[s] = tail - 1
        edge_counts[s] = m
    return sizes_arr, edges_arr
