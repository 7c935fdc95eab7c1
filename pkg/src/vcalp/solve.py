"""Branch-and-reduce for Vertex Cover, measured by mu = k - vc* (half-units).

Two engines share one driver:

* ``simple``: reduce, then branch on the smallest vertex (v in / N(v) in).
* ``improved``: reduce, then the first applicable of rules B1..B6.

Both split into connected components, finish components of at most
``BASE_CASE_SIZE`` vertices by exhaustive search, and check at every branch
that each child's reduced measure dropped by the amount its rule promises.
"""

from __future__ import annotations

import itertools
from collections import Counter
from dataclasses import dataclass, field

from .graph import Graph
from .lpvc import lp_index, lp_value, min_surplus_containing, surplus_profile
from .reduce import (
    StructionR3,
    find_rule2_set,
    instance,
    reduce_exhaustively,
)

SIMPLE = "simple"
IMPROVED = "improved"
VARIANTS = (SIMPLE, IMPROVED)
BASE_CASE_SIZE = 10

RULES = ("SIMPLE", "B1", "B2", "B3", "B4", "B5", "B6")
UP_TO_B3 = frozenset({"B1", "B2", "B3"})
UP_TO_B4 = frozenset({"B1", "B2", "B3", "B4"})


class DepthGuardError(AssertionError):
    pass


@dataclass
class SolveStats:
    nodes_visited: int = 0
    max_depth: int = 0
    mu_root: int = 0  # half-units
    rule_fire_counts: Counter = field(default_factory=Counter)
    drop_violations: int = 0
    # follow-up checks skipped because the child split up or hit the base case
    cut_chains: int = 0
    b6_instances: int = 0
    b6_structure_violations: int = 0
    violations: list = field(default_factory=list)

    def merge(self, other: "SolveStats") -> None:
        self.nodes_visited += other.nodes_visited
        self.max_depth = max(self.max_depth, other.max_depth)
        self.rule_fire_counts.update(other.rule_fire_counts)
        self.drop_violations += other.drop_violations
        self.cut_chains += other.cut_chains
        self.b6_instances += other.b6_instances
        self.b6_structure_violations += other.b6_structure_violations
        self.violations.extend(other.violations)

    def as_dict(self) -> dict:
        return {
            "nodes_visited": self.nodes_visited,
            "max_depth": self.max_depth,
            "mu_root": self.mu_root,
            "rule_fire_counts": dict(sorted(self.rule_fire_counts.items())),
            "drop_violations": self.drop_violations,
            "cut_chains": self.cut_chains,
            "b6_instances": self.b6_instances,
        }


@dataclass(frozen=True)
class Child:
    """One branch: delete ``delete`` from the graph and put ``include`` in the cover."""

    delete: frozenset
    include: frozenset
    drop: int  # promised measure drop, half-units
    expect: tuple | None = None  # (allowed rules at the child, expectation for its first child)


@dataclass(frozen=True)
class BranchDecision:
    rule: str
    pivot: object
    children: tuple


def _include(vs, drop, expect=None) -> Child:
    vs = frozenset(vs)
    return Child(vs, vs, drop, expect)


def _exclude(g: Graph, vs, drop, expect=None) -> Child:
    vs = frozenset(vs)
    nb = frozenset(g.neighborhood(vs))
    return Child(vs | nb, nb, drop, expect)


# -- base case ---------------------------------------------------------------------

def _small_min_cover(g: Graph) -> set:
    """Exhaustive minimum vertex cover for small graphs (branch on max degree)."""
    verts = list(g.vertices())
    pos = {v: i for i, v in enumerate(verts)}
    adj = [0] * len(verts)
    for u, v in g.edges():
        adj[pos[u]] |= 1 << pos[v]
        adj[pos[v]] |= 1 << pos[u]

    def rec(mask: int) -> int:
        # returns a bitmask cover of the subgraph induced by mask
        best_v, best_d = -1, 0
        m = mask
        while m:
            low = m & -m
            v = low.bit_length() - 1
            m ^= low
            d = bin(adj[v] & mask).count("1")
            if d > best_d:
                best_v, best_d = v, d
        if best_d == 0:
            return 0
        v = best_v
        with_v = rec(mask & ~(1 << v)) | (1 << v)
        if best_d == 1:
            return with_v
        nb = adj[v] & mask
        without_v = rec(mask & ~nb & ~(1 << v)) | nb
        if bin(without_v).count("1") < bin(with_v).count("1"):
            return without_v
        return with_v

    cover = rec((1 << len(verts)) - 1)
    return {verts[i] for i in range(len(verts)) if cover >> i & 1}


# -- branching rules -------------------------------------------------------------

def _memo(g: Graph, name: str, fn):
    key = (name, g.key())
    memo = g.lineage_memo
    if key not in memo:
        memo[key] = fn()
    return memo[key]


def select_b1(g: Graph) -> frozenset | None:
    """First nonadjacent pair whose minimum-surplus superset reaches surplus(G)."""
    return _memo(g, "b1", lambda: _select_b1(g))


def _select_b1(g: Graph):
    if g.n < 2:
        return None
    profile = surplus_profile(g)
    p = min(profile)
    idx = lp_index(g)
    # a set of surplus p only contains vertices whose own minimum is p
    cand = [idx.verts[i] for i in range(idx.n) if profile[i] == p]
    single = {}
    for a, b in itertools.combinations(cand, 2):
        if g.has_edge(a, b):
            continue
        if a not in single:
            single[a] = min_surplus_containing(g, [a]).witness
        if b not in single[a]:
            seed_idx = [idx.pos[a], idx.pos[b]]
            nb = g.neighborhood((a, b))
            rest = idx.mask_without(seed_idx + [idx.pos[w] for w in nb])
            if 2 * len(nb) + idx.lp_value(rest) - g.n != p:
                continue
        cert = min_surplus_containing(g, [a, b])
        assert cert.surplus == p and len(cert.witness) >= 2
        return cert.witness
    return None


def select_b2(g: Graph) -> tuple | None:
    """Smallest v with a neighbour u such that N(v) - {u} is a clique."""
    for v in g.vertices():
        nv = g.neighbors(v)
        for u in sorted(nv):
            if g.is_clique(nv - {u}):
                return v, u
    return None


def select_b3(g: Graph) -> int | None:
    """Smallest v such that Rule 2 applies in G - v."""
    return _memo(g, "b3", lambda: _select_b3(g))


def _select_b3(g: Graph):
    if g.n == 0:
        return None
    profile = surplus_profile(g)
    if min(profile) != 2:
        # deleting one vertex lowers the surplus by at most one
        return None
    idx = lp_index(g)
    tight = [idx.verts[i] for i in range(idx.n) if profile[i] == 2]
    near = set()
    for u in tight:
        near |= g.neighbors(u)
    for v in g.vertices():
        if v not in near:
            continue
        if find_rule2_set(g.delete_vertices([v])) is not None:
            return v
    return None


def select_b4(g: Graph) -> int | None:
    for v in g.vertices():
        if g.degree(v) >= 4:
            return v
    return None


def _reduced_without(g: Graph, v) -> Graph:
    return reduce_exhaustively(instance(g.delete_vertices([v]), 0)).graph


def select_b5(g: Graph) -> int | None:
    """Smallest v such that B1, B2 or B3 applies once G - v is reduced."""
    return _memo(g, "b5", lambda: _select_b5(g))


def _select_b5(g: Graph):
    for v in g.vertices():
        r = _reduced_without(g, v)
        if r.n and (select_b1(r) is not None or select_b2(r) is not None
                    or select_b3(r) is not None):
            return v
    return None


def improved_decision(g: Graph) -> BranchDecision:
    """Branch selection of the improved engine on a reduced connected graph."""
    s = select_b1(g)
    if s is not None:
        return BranchDecision("B1", s, (_include(s, 2), _exclude(g, s, 2)))
    pair = select_b2(g)
    if pair is not None:
        v, u = pair
        return BranchDecision("B2", pair, (_exclude(g, [v], 2), _exclude(g, [u], 2)))
    v = select_b3(g)
    if v is not None:
        return BranchDecision("B3", v, (_include([v], 2), _exclude(g, [v], 2)))
    v = select_b4(g)
    if v is not None:
        return BranchDecision("B4", v, (_include([v], 1), _exclude(g, [v], 3)))
    v = select_b5(g)
    if v is not None:
        return BranchDecision("B5", v, (_include([v], 1, (UP_TO_B3, None)), _exclude(g, [v], 2)))
    return BranchDecision("B6", g.vertices()[0], ())


def simple_decision(g: Graph) -> BranchDecision:
    v = g.vertices()[0]
    return BranchDecision("SIMPLE", v, (_include([v], 1), _exclude(g, [v], 2)))


def b6_structure_ok(g: Graph) -> bool:
    """Connected, cubic, at least 11 vertices, girth at least 7."""
    return (g.n >= 11 and all(g.degree(v) == 3 for v in g.vertices())
            and len(g.components()) == 1 and g.girth() >= 7)


# -- driver -------------------------------------------------------------------------

class Solver:
    """One decision run.  Not reusable across threads."""

    def __init__(self, variant: str = IMPROVED, check_drops: bool = True,
                 stats: SolveStats | None = None):
        if variant not in VARIANTS:
            raise ValueError(f"unknown variant {variant!r}")
        self.variant = variant
        self.check_drops = check_drops
        self.stats = stats if stats is not None else SolveStats()
        self._guard = 0

    def decide(self, g: Graph, k: int) -> set | None:
        mu = 2 * k - lp_value(g)
        self.stats.mu_root = mu
        self._guard = max(mu, 0) + 4
        return self._solve(g, k, 0, 0, None, None)

    # -- bookkeeping

    def _violation(self, message: str) -> None:
        self.stats.drop_violations += 1
        self.stats.violations.append(message)

    def _check_drop(self, parent_mu, child_mu, drop, rule) -> None:
        if self.check_drops and parent_mu is not None and parent_mu - child_mu < drop:
            self._violation(f"{rule}: measure {parent_mu} -> {child_mu}, promised drop {drop}")

    # -- recursion

    def _solve(self, g: Graph, k: int, depth: int, splits: int,
               parent: tuple | None, expect: tuple | None) -> set | None:
        """``parent`` is (parent_mu, promised_drop, rule) for the drop check."""
        st = self.stats
        st.nodes_visited += 1
        st.max_depth = max(st.max_depth, depth)
        if depth > self._guard + 2 * splits:
            raise DepthGuardError(f"depth {depth} exceeds guard {self._guard + 2 * splits}")

        red = reduce_exhaustively(instance(g, k))
        h, kk = red.graph, red.k
        mu = 2 * kk - h.n  # h is reduced, so vc*(h) = |V(h)| / 2
        if parent is not None:
            self._check_drop(parent[0], mu, parent[1], parent[2])
        if mu < 0 or kk < 0:
            return None
        if h.n == 0:
            if expect is not None:
                st.cut_chains += 1
            return red.lift(set())

        comps = h.components()
        if len(comps) > 1:
            if expect is not None:
                st.cut_chains += 1
            cover = self._split(comps, kk, depth, splits + len(comps))
            return None if cover is None else red.lift(cover)
        if h.n <= BASE_CASE_SIZE:
            if expect is not None:
                st.cut_chains += 1
            cover = _small_min_cover(h)
            return red.lift(cover) if len(cover) <= kk else None

        if self.variant == SIMPLE:
            decision = simple_decision(h)
        else:
            decision = improved_decision(h)
        st.rule_fire_counts[decision.rule] += 1
        if expect is not None and self.check_drops and decision.rule not in expect[0]:
            self._violation(f"expected one of {sorted(expect[0])} after a composite rule, got {decision.rule}")
        first_expect = expect[1] if expect is not None else None

        if decision.rule == "B6":
            cover = self._b6(h, kk, mu, depth, splits)
        else:
            cover = None
            for i, child in enumerate(decision.children):
                child_expect = child.expect
                if i == 0 and first_expect is not None:
                    child_expect = first_expect
                sub = self._solve(h.delete_vertices(child.delete), kk - len(child.include),
                                  depth + 1, splits, (mu, child.drop, decision.rule), child_expect)
                if sub is not None:
                    cover = sub | child.include
                    break
        return None if cover is None else red.lift(cover)

    def _split(self, comps, k, depth, splits):
        lower = [(c.n + 1) // 2 for c in comps]
        used = 0
        cover: set = set()
        for i, comp in enumerate(comps):
            budget = k - used - sum(lower[i + 1:])
            found = None
            for ki in range(lower[i], budget + 1):
                found = self._solve(comp, ki, depth + 1, splits, None, None)
                if found is not None:
                    break
            if found is None:
                return None
            used += len(found)
            cover |= found
        return cover

    def _b6(self, g: Graph, k: int, mu: int, depth: int, splits: int):
        st = self.stats
        st.b6_instances += 1
        if not b6_structure_ok(g):
            st.b6_structure_violations += 1
            self._violation("B6 reached on a graph that is not connected cubic with girth >= 7")
        v = g.vertices()[0]
        x = min(g.neighbors(v))

        # v in the cover; a degree-4 vertex must follow, then a rule up to B4
        sub = self._solve(g.delete_vertices([v]), k - 1, depth + 1, splits,
                          (mu, 1, "B6"), (frozenset({"B4"}), (UP_TO_B4, None)))
        if sub is not None:
            return sub | {v}

        # v out: N(v) in.  Take x, let the reducer fold v with its other two
        # neighbours into v_yz, and take v_yz as well.
        red = reduce_exhaustively(instance(g.delete_vertices([x]), k - 1))
        vyz = None
        for step in red.trace:
            if isinstance(step, StructionR3) and step.Z == frozenset([v]):
                vyz = step.z
        if vyz is None or vyz not in red.graph:
            raise AssertionError("B6: v did not fold into a single vertex after removing x")
        sub = self._solve(red.graph.delete_vertices([vyz]), red.k - 1, depth + 1, splits,
                          (mu, 2, "B6"), (UP_TO_B4, None))
        if sub is None:
            return None
        return red.lift(sub | {vyz}) | {x}


def solve_decision(g: Graph, k: int, variant: str = IMPROVED, stats: SolveStats | None = None,
                   check_drops: bool = True) -> set | None:
    """A vertex cover of size at most k, or None."""
    solver = Solver(variant, check_drops, stats)
    cover = solver.decide(g, k)
    if cover is not None:
        assert g.is_vertex_cover(cover) and len(cover) <= k
    return cover


def solve_minimum(g: Graph, variant: str = IMPROVED, stats: SolveStats | None = None,
                  check_drops: bool = True) -> set:
    """Minimum vertex cover by trying k = ceil(vc*), ceil(vc*) + 1, ..."""
    k = (lp_value(g) + 1) // 2
    while True:
        run = SolveStats()
        cover = solve_decision(g, k, variant, run, check_drops)
        if stats is not None:
            stats.merge(run)
            stats.mu_root = run.mu_root
        if cover is not None:
            return cover
        k += 1
