"""Half-integral LP relaxation of Vertex Cover.

All LP values are integers counting halves: a value of 5 means 5/2.  The
optimum of LPVC(G) equals half the maximum matching of the bipartite double
cover of G, and a minimum cover of the double cover gives an optimal
half-integral assignment (x(v) = number of copies of v in the cover).

Constrained queries are answered on induced subgraphs: forcing x(v)=1 deletes
v and charges 2 half-units, forcing x(u)=0 deletes N[u] and charges
2·|N(u)|.  One :class:`LPIndex` per graph keeps a base matching that warm
starts every query on a subgraph.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .graph import Graph, GraphError
from .matching import FREE, hopcroft_karp, konig_cover


@dataclass(frozen=True)
class HalfIntegralSolution:
    """Assignment vertex -> {0, 1, 2} in half-units."""

    assignment: dict
    value: int

    @property
    def zeros(self) -> frozenset:
        return frozenset(v for v, x in self.assignment.items() if x == 0)

    @property
    def ones(self) -> frozenset:
        return frozenset(v for v, x in self.assignment.items() if x == 2)

    @property
    def halves(self) -> frozenset:
        return frozenset(v for v, x in self.assignment.items() if x == 1)

    def is_feasible(self, g: Graph) -> bool:
        return all(self.assignment[u] + self.assignment[v] >= 2 for u, v in g.edges())


@dataclass(frozen=True)
class NTDecomposition:
    zeros: frozenset
    ones: frozenset
    halves: frozenset

    @property
    def is_trivial(self) -> bool:
        return not self.zeros and not self.ones


@dataclass(frozen=True)
class SurplusCertificate:
    witness: frozenset
    surplus: int


def surplus(g: Graph, vertices) -> int:
    """|N(X)| - |X| computed directly on ``g``."""
    s = set(vertices)
    return len(g.neighborhood(s)) - len(s)


class LPIndex:
    """Dense index of a graph plus a maximum double-cover matching.

    Queries take a byte mask ``alive`` (1 = present) over the indices.
    """

    def __init__(self, g: Graph):
        self.verts = g.vertices()
        self.pos = {v: i for i, v in enumerate(self.verts)}
        self.nbrs = [sorted(self.pos[w] for w in g.neighbors(v)) for v in self.verts]
        self.n = len(self.verts)
        self._mate_l = [FREE] * self.n
        self._mate_r = [FREE] * self.n
        self.value = hopcroft_karp(self.nbrs, bytes([1]) * self.n, self._mate_l, self._mate_r)

    def mask_without(self, removed) -> bytearray:
        alive = bytearray([1]) * self.n
        for i in removed:
            alive[i] = 0
        return alive

    def _warm(self, alive):
        mate_l = self._mate_l[:]
        mate_r = self._mate_r[:]
        for u in range(self.n):
            w = mate_l[u]
            if w != FREE and not (alive[u] and alive[w]):
                mate_l[u] = FREE
                mate_r[w] = FREE
        return mate_l, mate_r

    def lp_value(self, alive) -> int:
        """LP optimum (half-units) of the alive subgraph."""
        mate_l, mate_r = self._warm(alive)
        return hopcroft_karp(self.nbrs, alive, mate_l, mate_r)

    def lp_solution(self, alive) -> tuple[int, dict[int, int]]:
        """Optimal value and assignment (index -> half-units) on the alive subgraph."""
        mate_l, mate_r = self._warm(alive)
        value = hopcroft_karp(self.nbrs, alive, mate_l, mate_r)
        left, right = konig_cover(self.nbrs, alive, mate_l, mate_r)
        x = {i: left[i] + right[i] for i in range(self.n) if alive[i]}
        return value, x

    def closed_nbhd(self, i: int) -> list[int]:
        return self.nbrs[i] + [i]

    def extremal(self, alive) -> tuple[set[int], set[int], set[int]]:
        """Extremal decomposition (zeros, ones, halves) of the alive subgraph.

        Starting from an optimal solution, fold in the forced solution of any
        half vertex whose zero-forcing keeps the LP value of the half part.
        At the fixed point every zero-forcing inside the half part costs, so
        all-1/2 is its unique optimum.
        """
        _, x = self.lp_solution(alive)
        zeros = {i for i, xi in x.items() if xi == 0}
        ones = {i for i, xi in x.items() if xi == 2}
        halves = {i for i, xi in x.items() if xi == 1}
        while halves:
            mask = bytearray(self.n)
            for i in halves:
                mask[i] = 1
            for v in sorted(halves):
                nv = [w for w in self.nbrs[v] if mask[w]]
                rest = bytearray(mask)
                rest[v] = 0
                for w in nv:
                    rest[w] = 0
                if 2 * len(nv) + self.lp_value(rest) == len(halves):
                    _, xr = self.lp_solution(rest)
                    zeros.add(v)
                    zeros.update(i for i, xi in xr.items() if xi == 0)
                    ones.update(nv)
                    ones.update(i for i, xi in xr.items() if xi == 2)
                    halves = {i for i, xi in xr.items() if xi == 1}
                    break
            else:
                break
        return zeros, ones, halves

    def forced_zero(self, alive, i: int) -> int:
        """LP value with x(i)=0 on the alive subgraph: 2|N(i)| + LP(rest)."""
        rest = bytearray(alive)
        rest[i] = 0
        deg = 0
        for w in self.nbrs[i]:
            if rest[w]:
                rest[w] = 0
                deg += 1
        return 2 * deg + self.lp_value(rest)

    def ids(self, indices) -> frozenset:
        return frozenset(self.verts[i] for i in indices)


def lp_index(g: Graph) -> LPIndex:
    idx = g._cache.get("lp")
    if idx is None:
        idx = g._cache["lp"] = LPIndex(g)
    return idx


def lp_value(g: Graph) -> int:
    """vc*(G) in half-units."""
    return lp_index(g).value


def solve_lp(g: Graph) -> HalfIntegralSolution:
    """Optimal half-integral solution via König's theorem on the double cover."""
    idx = lp_index(g)
    value, x = idx.lp_solution(bytearray([1]) * idx.n)
    return HalfIntegralSolution({idx.verts[i]: xi for i, xi in x.items()}, value)


def extremal_decomposition(g: Graph) -> NTDecomposition:
    """Decomposition whose half part has all-1/2 as its unique LP optimum."""
    cached = g._cache.get("nt")
    if cached is None:
        idx = lp_index(g)
        zeros, ones, halves = idx.extremal(bytearray([1]) * idx.n)
        cached = g._cache["nt"] = NTDecomposition(idx.ids(zeros), idx.ids(ones), idx.ids(halves))
    return cached


def lp_value_forced_ones(g: Graph, forced) -> int:
    """LP value with every vertex of ``forced`` fixed to 1."""
    idx = lp_index(g)
    forced = set(forced)
    unknown = forced - set(idx.pos)
    if unknown:
        raise GraphError(f"unknown vertices {sorted(unknown)}")
    alive = idx.mask_without(idx.pos[v] for v in forced)
    return 2 * len(forced) + idx.lp_value(alive)


def _forced_zero_set(g: Graph, seed) -> tuple[int, frozenset]:
    idx = lp_index(g)
    seed = set(seed)
    unknown = seed - set(idx.pos)
    if unknown:
        raise GraphError(f"unknown vertices {sorted(unknown)}")
    if not g.is_independent(seed):
        raise GraphError("seed set is not independent")
    nbhd = g.neighborhood(seed)
    alive = idx.mask_without(idx.pos[v] for v in seed | nbhd)
    zeros, _, _ = idx.extremal(alive)
    value = 2 * len(nbhd) + idx.lp_value(alive)
    return value, frozenset(seed) | idx.ids(zeros)


def lp_value_forced_zero(g: Graph, u) -> tuple[int, frozenset]:
    """LP value with x(u)=0, and an independent witness set containing u.

    The witness is u plus the zeros of the extremal decomposition of
    G - N[u]; its surplus equals ``value - |V|``.
    """
    return _forced_zero_set(g, [u])


def min_surplus_containing(g: Graph, seed) -> SurplusCertificate:
    """Minimum-surplus independent set among those containing ``seed``.

    In an optimal LP solution with the seed fixed to 0, the ones are exactly
    the neighbours of the zeros, which is why the zero part minimises
    |N(X)| - |X| for every graph, not only those with a unique all-1/2 optimum.
    """
    _, witness = _forced_zero_set(g, seed)
    return SurplusCertificate(witness, surplus(g, witness))


def surplus_profile(g: Graph) -> list[int]:
    """For each vertex in id order, the minimum surplus of a set containing it."""
    cached = g._cache.get("profile")
    if cached is None:
        idx = lp_index(g)
        full = bytearray([1]) * idx.n
        cached = g._cache["profile"] = [idx.forced_zero(full, i) - idx.n for i in range(idx.n)]
    return cached


def graph_surplus(g: Graph) -> SurplusCertificate:
    """Minimum surplus over all non-empty independent sets (smallest-id seed on ties)."""
    if g.n == 0:
        raise GraphError("surplus of the empty graph is undefined")
    profile = surplus_profile(g)
    best = min(range(len(profile)), key=lambda i: (profile[i], i))
    cert = min_surplus_containing(g, [lp_index(g).verts[best]])
    assert cert.surplus == profile[best]
    return cert
