# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled BFS kernels; see _speedups_py for the reference semantics."""

import numpy as np

BACKEND = "cython"


def bfs_fill(int[:] indptr, int[:] indices, int source, int cutoff, int[:] dist):
    cdef int n = indptr.shape[0] - 1
    cdef int[:] queue = np.empty(n, dtype=np.int32)
    cdef int head = 0, tail = 0
    cdef int u, v, k, du

    dist[source] = 0
    queue[tail] = source
    tail += 1
    while head < tail:
        u = queue[head]
        head += 1
        du = dist[u]
        if cutoff >= 0 and du >= cutoff:
            continue
        for k in range(indptr[u], indptr[u + 1]):
            v = indices[k]
            if dist[v] < 0:
                dist[v] = du + 1
                queue[tail] = v
                tail += 1
    return dist.base if hasattr(dist, "base") else dist


def bfs_fill_masked(int[:] indptr, int[:] indices, int source, int cutoff,
                    unsigned char[:] mask, int[:] dist):
    cdef int n = indptr.shape[0] - 1
    cdef int[:] queue = np.empty(n, dtype=np.int32)
    cdef int head = 0, tail = 0
    cdef int u, v, k, du

    if not mask[source]:
        raise ValueError("source vertex is masked out")
    dist[source] = 0
    queue[tail] = source
    tail += 1
    while head < tail:
        u = queue[head]
        head += 1
        du = dist[u]
        if cutoff >= 0 and du >= cutoff:
            continue
        for k in range(indptr[u], indptr[u + 1]):
            v = indices[k]
            if mask[v] and dist[v] < 0:
                dist[v] = du + 1
                queue[tail] = v
                tail += 1
    return dist.base if hasattr(dist, "base") else dist


def all_pairs_fill(int[:] indptr, int[:] indices, int[:, :] out):
    cdef int n = indptr.shape[0] - 1
    cdef int s
    for s in range(n):
        bfs_fill(indptr, indices, s, -1, out[s])
    return out.base if hasattr(out, "base") else out
