"""Pure-Python BFS kernels.

Reference implementation of the hot loops; the compiled twin in
_speedups.pyx has identical signatures and semantics. Both operate on a
CSR adjacency (indptr, indices) of int32 arrays and fill caller-owned
distance buffers prefilled with -1 (unreached).
"""

BACKEND = "python"


def bfs_fill(indptr, indices, source, cutoff, dist):
    """BFS distances from `source` into `dist`; stop beyond `cutoff` (<0 = none)."""
    ind = indices.tolist()
    ptr = indptr.tolist()
    dist[source] = 0
    queue = [source]
    depth = 0
    while queue:
        if 0 <= cutoff <= depth:
            break
        nxt = []
        for u in queue:
            for k in range(ptr[u], ptr[u + 1]):
                v = ind[k]
                if dist[v] < 0:
                    dist[v] = depth + 1
                    nxt.append(v)
        queue = nxt
        depth += 1
    return dist


def bfs_fill_masked(indptr, indices, source, cutoff, mask, dist):
    """As bfs_fill but only traverses vertices with mask[v] != 0."""
    ind = indices.tolist()
    ptr = indptr.tolist()
    keep = mask.tolist()
    if not keep[source]:
        raise ValueError("source vertex is masked out")
    dist[source] = 0
    queue = [source]
    depth = 0
    while queue:
        if 0 <= cutoff <= depth:
            break
        nxt = []
        for u in queue:
            for k in range(ptr[u], ptr[u + 1]):
                v = ind[k]
                if keep[v] and dist[v] < 0:
                    dist[v] = depth + 1
                    nxt.append(v)
        queue = nxt
        depth += 1
    return dist


def all_pairs_fill(indptr, indices, out):
    """Fill the (n, n) matrix `out` with all-pairs BFS distances."""
    n = len(indptr) - 1
    for s in range(n):
        bfs_fill(indptr, indices, s, -1, out[s])
    return out
