"""Bipartite matching on the double cover of a graph.

The double cover has a left and a right copy of every vertex; the left copy of
``u`` is joined to the right copies of ``N(u)``.  We never build it: the
adjacency list of the base graph already describes it.  Vertices are dense
indices ``0..n-1`` and an ``alive`` byte mask selects an induced subgraph, so
many constrained LP queries can share one index and one warm-start matching.
"""

from __future__ import annotations

import sys

FREE = -1


def hopcroft_karp(nbrs: list[list[int]], alive, mate_l: list[int], mate_r: list[int]) -> int:
    """Grow ``mate_l``/``mate_r`` to a maximum matching of the alive double cover.

    The arrays are updated in place and may hold any valid matching among
    alive vertices on entry (warm start).  Returns the final matching size.
    """
    lefts = [u for u in range(len(nbrs)) if alive[u]]
    size = sum(1 for u in lefts if mate_l[u] != FREE)
    if len(lefts) > 400:
        sys.setrecursionlimit(max(sys.getrecursionlimit(), 4 * len(lefts) + 100))

    while True:
        # layered BFS from all free left vertices
        dist = {}
        queue = []
        for u in lefts:
            if mate_l[u] == FREE:
                dist[u] = 0
                queue.append(u)
        limit = None
        for u in queue:
            du = dist[u]
            if limit is not None and du >= limit:
                break
            for w in nbrs[u]:
                if not alive[w]:
                    continue
                m = mate_r[w]
                if m == FREE:
                    if limit is None:
                        limit = du + 1
                elif m not in dist:
                    dist[m] = du + 1
                    queue.append(m)
        if limit is None:
            return size

        def augment(u):
            du = dist[u]
            for w in nbrs[u]:
                if not alive[w]:
                    continue
                m = mate_r[w]
                if m == FREE:
                    if du + 1 != limit:
                        continue
                elif dist.get(m) != du + 1 or not augment(m):
                    continue
                mate_l[u] = w
                mate_r[w] = u
                return True
            dist[u] = None
            return False

        for u in lefts:
            if mate_l[u] == FREE and dist.get(u) == 0 and augment(u):
                size += 1


def konig_cover(nbrs: list[list[int]], alive, mate_l: list[int], mate_r: list[int]):
    """Minimum vertex cover of the double cover from a maximum matching.

    Returns ``(left_in_cover, right_in_cover)`` as boolean lists; dead
    vertices are never in the cover.  ``Z`` is the set reachable from free
    left vertices by alternating paths, and the cover is ``(L - Z) | (R & Z)``.
    """
    n = len(nbrs)
    z_left = [False] * n
    z_right = [False] * n
    stack = [u for u in range(n) if alive[u] and mate_l[u] == FREE]
    for u in stack:
        z_left[u] = True
    while stack:
        u = stack.pop()
        for w in nbrs[u]:
            if alive[w] and not z_right[w]:
                z_right[w] = True
                m = mate_r[w]
                if m != FREE and not z_left[m]:
                    z_left[m] = True
                    stack.append(m)
    left = [bool(alive[u]) and not z_left[u] for u in range(n)]
    return left, z_right
