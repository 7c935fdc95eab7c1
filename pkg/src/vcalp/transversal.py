"""Problems that reduce to Vertex Cover above LP.

* (X, Y)-deletion: delete at most k vertices so that the rest splits into an
  X-part and a Y-part (X, Y each a clique or an independent set).  Odd cycle
  transversal is (IS, IS) and split vertex deletion is (clique, IS).
* König recognition through the solver at budget nu(G).
* Vertex Cover with a König (or bipartite) deletion set as side information.
* A kernel with at most 2k - 2c*log2(k) vertices.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import networkx as nx

from .graph import Graph
from .lpvc import extremal_decomposition, lp_value
from .reduce import instance, reduce_exhaustively
from .solve import IMPROVED, solve_decision, solve_minimum

CLIQUE = "clique"
INDEPENDENT = "independent"


class TransversalError(AssertionError):
    """The reduction produced an answer that fails structural verification."""


@dataclass(frozen=True)
class XYKind:
    X: str
    Y: str

    def __post_init__(self):
        for part in (self.X, self.Y):
            if part not in (CLIQUE, INDEPENDENT):
                raise ValueError(f"unknown part kind {part!r}")


OCT = XYKind(INDEPENDENT, INDEPENDENT)
SVD = XYKind(CLIQUE, INDEPENDENT)


@dataclass(frozen=True)
class TransversalEncoding:
    H: Graph
    map_v1: dict
    map_v2: dict
    n: int


def build_xy(g: Graph, kind: XYKind) -> TransversalEncoding:
    """Two copies of V joined by a perfect matching.

    Copy i is a copy of G when its part is an independent set and of the
    complement when its part is a clique, so X/Y-parts become independent sets.
    """
    verts = g.vertices()
    edges = []
    for copy, part in ((1, kind.X), (2, kind.Y)):
        base = g if part == INDEPENDENT else g.complement()
        edges.extend(((copy, u), (copy, v)) for u, v in base.edges())
    edges.extend(((1, v), (2, v)) for v in verts)
    labels = [(1, v) for v in verts] + [(2, v) for v in verts]
    h = Graph.from_edges(edges, labels)
    by_label = {h.origin(i): i for i in h.vertices()}
    return TransversalEncoding(h, {v: by_label[(1, v)] for v in verts},
                               {v: by_label[(2, v)] for v in verts}, len(verts))


def _is_part(g: Graph, vertices, part: str) -> bool:
    return g.is_independent(vertices) if part == INDEPENDENT else g.is_clique(vertices)


def solve_xy_deletion(g: Graph, k: int, kind: XYKind) -> set | None:
    """Delete at most k vertices to make G an (X, Y)-graph, or None.

    Solves Vertex Cover on H(X, Y) with budget n + k; the uncovered vertices
    form an independent set whose two halves give the X- and Y-parts.
    """
    if k < 0:
        return None
    enc = build_xy(g, kind)
    cover = solve_decision(enc.H, enc.n + k, IMPROVED)
    if cover is None:
        return None
    kept = set(enc.H.vertices()) - cover
    b1 = {v for v, c in enc.map_v1.items() if c in kept}
    b2 = {v for v, c in enc.map_v2.items() if c in kept}
    deletion = set(g.vertices()) - b1 - b2
    if b1 & b2 or len(deletion) > k:
        raise TransversalError("projected parts overlap or exceed the budget")
    if not (_is_part(g, b1, kind.X) and _is_part(g, b2, kind.Y)):
        raise TransversalError("projected parts have the wrong shape")
    rest = g.delete_vertices(deletion)
    if kind == OCT and not rest.is_bipartite():
        raise TransversalError("G minus the deletion set is not bipartite")
    return deletion


def solve_oct(g: Graph, k: int) -> set | None:
    return solve_xy_deletion(g, k, OCT)


def solve_svd(g: Graph, k: int) -> set | None:
    return solve_xy_deletion(g, k, SVD)


def min_xy_deletion(g: Graph, kind: XYKind) -> set:
    k = 0
    while True:
        found = solve_xy_deletion(g, k, kind)
        if found is not None:
            return found
        k += 1


# -- König graphs --------------------------------------------------------------------

@dataclass(frozen=True)
class KonigCertificate:
    cover_side: frozenset
    matching: tuple  # (cover vertex, partner) pairs

    def check(self, g: Graph) -> bool:
        if not g.is_vertex_cover(self.cover_side):
            return False
        used = set()
        for a, b in self.matching:
            if not g.has_edge(a, b) or a in used or b in used:
                return False
            if a not in self.cover_side or b in self.cover_side:
                return False
            used.update((a, b))
        return used >= self.cover_side


def maximum_matching(g: Graph) -> list[tuple[int, int]]:
    """Maximum cardinality matching of a general graph (blossom algorithm)."""
    nxg = nx.Graph()
    nxg.add_nodes_from(g.vertices())
    nxg.add_edges_from(g.edges())
    mate = nx.max_weight_matching(nxg, maxcardinality=True)
    return sorted(tuple(sorted(e)) for e in mate)


def verify_konig(g: Graph) -> KonigCertificate | None:
    """Certificate that vc(G) = nu(G), or None.

    Runs the decision solver with budget nu(G); the measure is at most zero,
    so it answers without real branching.
    """
    matching = maximum_matching(g)
    cover = solve_decision(g, len(matching), IMPROVED)
    if cover is None:
        return None
    pairs = tuple(sorted((a, b) if a in cover else (b, a) for a, b in matching))
    cert = KonigCertificate(frozenset(cover), pairs)
    if not cert.check(g):
        raise AssertionError("König certificate failed verification")
    return cert


# -- Vertex Cover with a deletion set -------------------------------------------------

class InvalidDeletionSet(ValueError):
    pass


@dataclass
class ParamRun:
    cover: set | None
    mu_half: int  # vc(G') - vc*(G') in half-units, G' the half part
    forced: int  # vertices fixed to 1 by the decomposition


def vc_param_run(g: Graph, s, ell: int, kind: str) -> ParamRun:
    """Vertex Cover of size at most ``ell`` given a KVD (or OCT) set ``s``."""
    s = set(s)
    if not s <= set(g.vertices()):
        raise InvalidDeletionSet("deletion set has unknown vertices")
    rest = g.delete_vertices(s)
    if kind == "oct":
        ok = rest.is_bipartite()
    elif kind == "kvd":
        ok = verify_konig(rest) is not None
    else:
        raise ValueError(f"unknown kind {kind!r}")
    if not ok:
        raise InvalidDeletionSet(f"G minus the set is not {'bipartite' if kind == 'oct' else 'König'}")

    nt = extremal_decomposition(g)
    core = g.induced(nt.halves)
    cover = solve_minimum(core, IMPROVED)
    mu_half = 2 * len(cover) - lp_value(core)
    if mu_half > len(s):
        raise AssertionError(f"above-LP gap {mu_half}/2 exceeds |S|/2 = {len(s)}/2")
    full = set(cover) | set(nt.ones)
    assert g.is_vertex_cover(full)
    return ParamRun(full if len(full) <= ell else None, mu_half, len(nt.ones))


def vc_param_budget(g: Graph, s, ell: int, kind: str) -> set | None:
    return vc_param_run(g, s, ell, kind).cover


# -- kernel ----------------------------------------------------------------------

KERNEL = "kernel"
SOLVED_YES = "solved-yes"
SOLVED_NO = "solved-no"


@dataclass
class KernelResult:
    graph: Graph
    k: int
    status: str
    trace: tuple = ()
    cover: set | None = None  # lifted cover when solved-yes


def ceil_log2(k: int) -> int:
    return 0 if k <= 1 else math.ceil(math.log2(k))


def kernelize(g: Graph, k: int, c: int = 1) -> KernelResult:
    """Reduce; solve outright when k' - vc* <= c*log2(k'), else return the kernel.

    A returned kernel has |V| = 2 vc* < 2k' - 2c*ceil(log2 k').
    """
    if c < 1:
        raise ValueError("c must be a positive integer")
    red = reduce_exhaustively(instance(g, k))
    h, kk = red.graph, red.k
    if kk < 0:
        return KernelResult(h, kk, SOLVED_NO, red.trace)
    mu_half = 2 * kk - h.n
    if mu_half <= 2 * c * ceil_log2(kk):
        cover = solve_decision(h, kk, IMPROVED)
        if cover is None:
            return KernelResult(h, kk, SOLVED_NO, red.trace)
        return KernelResult(h, kk, SOLVED_YES, red.trace, red.lift(cover))
    assert h.n < 2 * kk - 2 * c * ceil_log2(kk)
    return KernelResult(h, kk, KERNEL, red.trace)
