"""Brute-force reference answers for small graphs.

Nothing here imports the solver, the LP engine or the matching code.  The
only shared piece is :class:`~vcalp.graph.Graph`, and even that is used only
to read vertices and edges; everything else runs on private bitmasks.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache


@dataclass(frozen=True)
class OracleLimits:
    max_n_vc: int = 20
    max_n_lp: int = 12
    max_n_surplus: int = 16
    max_n_oct_svd: int = 14
    max_n_konig: int = 12


LIMITS = OracleLimits()


class OracleLimitError(ValueError):
    pass


def _check(g, limit: int, what: str) -> None:
    if g.n > limit:
        raise OracleLimitError(f"{what} oracle refuses n={g.n} > {limit}")


def _bits(g):
    """Vertices in id order and neighbour bitmasks over positions."""
    verts = list(g.vertices())
    pos = {v: i for i, v in enumerate(verts)}
    masks = [0] * len(verts)
    for u, v in g.edges():
        masks[pos[u]] |= 1 << pos[v]
        masks[pos[v]] |= 1 << pos[u]
    return verts, masks


def _members(mask: int):
    i = 0
    while mask:
        if mask & 1:
            yield i
        mask >>= 1
        i += 1


def _popcount(x: int) -> int:
    return bin(x).count("1")


# -- vertex cover ------------------------------------------------------------

def _mis_solver(masks):
    """Returns f(mask) = maximum independent set size inside ``mask``."""

    @lru_cache(maxsize=None)
    def mis(mask: int) -> int:
        if mask == 0:
            return 0
        best_v, best_d = -1, -1
        for v in _members(mask):
            d = _popcount(masks[v] & mask)
            if d <= 1:
                # a vertex of degree <= 1 can always be taken
                return 1 + mis(mask & ~(masks[v] | (1 << v)))
            if d > best_d:
                best_v, best_d = v, d
        v = best_v
        return max(mis(mask & ~(1 << v)), 1 + mis(mask & ~(masks[v] | (1 << v))))

    return mis


def bf_min_vc(g) -> tuple[int, list]:
    """Minimum vertex cover size and the lexicographically least minimum cover."""
    _check(g, LIMITS.max_n_vc, "vc")
    verts, masks = _bits(g)
    n = len(verts)
    full = (1 << n) - 1
    mis = _mis_solver(masks)
    best = n - mis(full)

    # Greedy over vertices in order: put v in the cover whenever some minimum
    # cover agrees with all choices so far and contains v.
    chosen_in = 0
    remaining = full  # vertices whose status is still open
    cost = 0  # cover vertices already fixed
    for v in range(n):
        if not remaining >> v & 1:
            continue
        rest = remaining & ~(1 << v)
        if cost + 1 + (_popcount(rest) - mis(rest)) == best:
            chosen_in |= 1 << v
            remaining = rest
            cost += 1
        else:
            # v stays out: all of its open neighbours go in
            forced = masks[v] & remaining
            chosen_in |= forced
            cost += _popcount(forced)
            remaining &= ~(forced | (1 << v))
    cover = [verts[i] for i in _members(chosen_in)]
    assert len(cover) == best
    return best, cover


def bf_max_matching(g) -> int:
    """Maximum matching size by memoised recursion over vertex subsets."""
    verts, masks = _bits(g)

    @lru_cache(maxsize=None)
    def nu(mask: int) -> int:
        if mask == 0:
            return 0
        v = (mask & -mask).bit_length() - 1
        rest = mask & ~(1 << v)
        best = nu(rest)
        for w in _members(masks[v] & rest):
            best = max(best, 1 + nu(rest & ~(1 << w)))
        return best

    return nu((1 << len(verts)) - 1)


# -- LP relaxation ---------------------------------------------------------------

def bf_lp(g) -> tuple[int, bool]:
    """Minimum feasible half-integral assignment, in half-units.

    Also reports whether all-1/2 is the unique optimum.  Plain backtracking
    over {0, 1, 2} per vertex.
    """
    _check(g, LIMITS.max_n_lp, "lp")
    verts, masks = _bits(g)
    n = len(verts)
    earlier = [[w for w in _members(masks[v]) if w < v] for v in range(n)]
    x = [0] * n
    best = [n + 1, n + 1]  # overall optimum, optimum among assignments with a zero

    def search(v: int, total: int, has_zero: bool) -> None:
        if total > best[0] and (total > n or best[1] <= n):
            return
        if v == n:
            if total < best[0]:
                best[0] = total
            if has_zero and total < best[1]:
                best[1] = total
            return
        for val in (0, 1, 2):
            if all(x[w] + val >= 2 for w in earlier[v]):
                x[v] = val
                search(v + 1, total + val, has_zero or val == 0)
        x[v] = 0

    search(0, 0, False)
    value = best[0]
    unique = value == n and best[1] > n
    return value, unique


# -- surplus ---------------------------------------------------------------------

def _independent_sets(masks, n):
    """Every non-empty independent set as a bitmask, in increasing order of its members."""

    def grow(start: int, current: int, blocked: int):
        for v in range(start, n):
            if not blocked >> v & 1:
                nxt = current | (1 << v)
                yield nxt
                yield from grow(v + 1, nxt, blocked | masks[v])

    yield from grow(0, 0, 0)


def bf_min_surplus(g, containing=()) -> tuple[int, list]:
    """Minimum |N(X)| - |X| over non-empty independent X containing ``containing``.

    Ties go to the lexicographically least witness (as a sorted id list).
    """
    _check(g, LIMITS.max_n_surplus, "surplus")
    verts, masks = _bits(g)
    n = len(verts)
    if n == 0:
        raise ValueError("empty graph")
    pos = {v: i for i, v in enumerate(verts)}
    need = 0
    for v in containing:
        need |= 1 << pos[v]
    best = None
    for s in _independent_sets(masks, n):
        if s & need != need:
            continue
        nb = 0
        for v in _members(s):
            nb |= masks[v]
        val = _popcount(nb & ~s) - _popcount(s)
        key = (val, [verts[i] for i in _members(s)])
        if best is None or key < best:
            best = key
    if best is None:
        raise ValueError("seed set is not independent")
    return best


# -- deletion problems ---------------------------------------------------------------

def _bipartite(masks, keep: int) -> bool:
    color = {}
    for s in _members(keep):
        if s in color:
            continue
        color[s] = 0
        todo = [s]
        while todo:
            u = todo.pop()
            for w in _members(masks[u] & keep):
                if w not in color:
                    color[w] = 1 - color[u]
                    todo.append(w)
                elif color[w] == color[u]:
                    return False
    return True


def _split(masks, keep: int) -> bool:
    # degree-sequence characterisation of split graphs
    degs = sorted((_popcount(masks[v] & keep) for v in _members(keep)), reverse=True)
    m = 0
    for i, d in enumerate(degs, start=1):
        if d >= i - 1:
            m = i
    return sum(degs[:m]) == m * (m - 1) + sum(degs[m:])


def _min_deletion(g, test) -> tuple[int, list]:
    verts, masks = _bits(g)
    n = len(verts)
    full = (1 << n) - 1
    for size in range(n + 1):
        for removed in itertools.combinations(range(n), size):
            keep = full
            for i in removed:
                keep &= ~(1 << i)
            if test(masks, keep):
                return size, [verts[i] for i in removed]
    raise AssertionError("the empty graph always qualifies")


def bf_min_oct(g) -> int:
    """Smallest vertex set whose removal leaves a bipartite graph."""
    _check(g, LIMITS.max_n_oct_svd, "oct")
    return _min_deletion(g, _bipartite)[0]


def bf_min_oct_set(g) -> list:
    _check(g, LIMITS.max_n_oct_svd, "oct")
    return _min_deletion(g, _bipartite)[1]


def bf_min_svd(g) -> int:
    """Smallest vertex set whose removal leaves a split graph."""
    _check(g, LIMITS.max_n_oct_svd, "svd")
    return _min_deletion(g, _split)[0]


def bf_is_split(g) -> bool:
    verts, masks = _bits(g)
    return _split(masks, (1 << len(verts)) - 1)


def bf_is_bipartite(g) -> bool:
    verts, masks = _bits(g)
    return _bipartite(masks, (1 << len(verts)) - 1)


def bf_is_konig(g) -> bool:
    """Minimum vertex cover size equals maximum matching size."""
    _check(g, LIMITS.max_n_konig, "konig")
    return bf_min_vc(g)[0] == bf_max_matching(g)


def bf_min_kvd_set(g) -> list:
    """Smallest vertex set whose removal leaves a König graph."""
    _check(g, LIMITS.max_n_konig, "kvd")
    n = g.n
    verts = list(g.vertices())
    for size in range(n + 1):
        for removed in itertools.combinations(verts, size):
            if bf_is_konig(g.delete_vertices(removed)):
                return list(removed)
    raise AssertionError("the empty graph is König")


OPS = {
    "min-vc": lambda g: bf_min_vc(g),
    "lp": lambda g: bf_lp(g),
    "min-surplus": lambda g: bf_min_surplus(g),
    "min-oct": lambda g: bf_min_oct(g),
    "min-svd": lambda g: bf_min_svd(g),
    "is-konig": lambda g: bf_is_konig(g),
    "matching": lambda g: bf_max_matching(g),
}
