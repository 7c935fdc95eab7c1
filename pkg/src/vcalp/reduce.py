"""Preprocessing rules and cover lifting.

Rule 1 folds the zeros/ones of the extremal LP decomposition.  Rule 2 takes
a surplus-1 independent set Z whose neighbourhood is not independent and
puts N(Z) in the cover.  Rule 3 takes a surplus-1 set Z with independent
neighbourhood, deletes Z and identifies N(Z) into one fresh vertex.  Rules
are tried in that order and the scan restarts after every application.

Every application appends a step to a trace so that a cover of the reduced
graph can be lifted back to a cover of the input graph.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Union

from .graph import Graph
from .lpvc import (
    extremal_decomposition,
    lp_index,
    lp_value,
    surplus_profile,
)


@dataclass(frozen=True)
class ForcedOnes:
    vertices: frozenset


@dataclass(frozen=True)
class ForcedZeros:
    vertices: frozenset


@dataclass(frozen=True)
class StructionR2:
    Z: frozenset
    NZ: frozenset


@dataclass(frozen=True)
class StructionR3:
    Z: frozenset
    NZ: frozenset
    z: int


TraceStep = Union[ForcedOnes, ForcedZeros, StructionR2, StructionR3]


class LiftError(AssertionError):
    pass


@dataclass(frozen=True)
class ReducedInstance:
    """A graph with budget k, plus the trace back to the graph it came from."""

    graph: Graph
    k: int
    trace: tuple = ()
    source: Graph | None = None

    @property
    def mu(self) -> int:
        """k - vc* in half-units (may be negative)."""
        return 2 * self.k - lp_value(self.graph)

    def lift(self, cover) -> set:
        return lift_cover(self.trace, cover, self.graph, self.source)


def instance(g: Graph, k: int) -> ReducedInstance:
    return ReducedInstance(g, k, (), g)


def _extend(inst: ReducedInstance, graph: Graph, k: int, *steps) -> ReducedInstance:
    source = inst.source if inst.source is not None else inst.graph
    return ReducedInstance(graph, k, inst.trace + steps, source)


# -- Rule 1 ------------------------------------------------------------------------

def apply_rule1(inst: ReducedInstance) -> ReducedInstance | None:
    """Fold the extremal decomposition's zeros and ones, or None if there are none."""
    g = inst.graph
    if g.n == 0:
        return None
    nt = extremal_decomposition(g)
    if nt.is_trivial:
        return None
    out = _extend(inst, g.delete_vertices(nt.zeros | nt.ones), inst.k - len(nt.ones),
                  ForcedZeros(nt.zeros), ForcedOnes(nt.ones))
    if out.mu != inst.mu:
        raise AssertionError(f"rule 1 changed the measure: {inst.mu} -> {out.mu}")
    return out


def _rule1_applies(g: Graph) -> bool:
    if lp_value(g) < g.n:
        return True
    return min(surplus_profile(g)) <= 0


def _require_all_half(g: Graph) -> None:
    if g.n and _rule1_applies(g):
        raise AssertionError("precondition: all-1/2 must be the unique LP optimum")


# -- Rule 2 ------------------------------------------------------------------------

def find_rule2_set(g: Graph) -> frozenset | None:
    """First edge (ascending) whose endpoints forced to 1 cost exactly one half-unit.

    Returns the zeros of the extremal decomposition of ``g - {u, v}``.
    """
    _require_all_half(g)
    if g.n == 0 or min(surplus_profile(g)) >= 2:
        # a Rule 2 set has surplus 1
        return None
    idx = lp_index(g)
    target = g.n + 1
    for u, v in g.edges():
        alive = idx.mask_without((idx.pos[u], idx.pos[v]))
        if 4 + idx.lp_value(alive) == target:
            zeros, _, _ = idx.extremal(alive)
            z = idx.ids(zeros)
            nz = g.neighborhood(z)
            assert z and g.is_independent(z) and len(nz) == len(z) + 1
            assert u in nz and v in nz
            return z
    return None


def apply_rule2(inst: ReducedInstance, Z) -> ReducedInstance:
    g = inst.graph
    Z = frozenset(Z)
    nz = frozenset(g.neighborhood(Z))
    out = _extend(inst, g.delete_vertices(Z | nz), inst.k - len(nz), StructionR2(Z, nz))
    if out.mu > inst.mu - 1:
        raise AssertionError(f"rule 2 dropped the measure by less than 1/2: {inst.mu} -> {out.mu}")
    return out


# -- Rule 3 ------------------------------------------------------------------------

def find_rule3_set(g: Graph) -> frozenset | None:
    """Witness of the first vertex (ascending) whose zero-forcing costs one half-unit."""
    _require_all_half(g)
    if g.n == 0:
        return None
    profile = surplus_profile(g)
    if min(profile) != 1:
        return None
    idx = lp_index(g)
    i = profile.index(1)
    u = idx.verts[i]
    rest = idx.mask_without(idx.closed_nbhd(i))
    zeros, _, _ = idx.extremal(rest)
    z = frozenset([u]) | idx.ids(zeros)
    nz = g.neighborhood(z)
    assert g.is_independent(z) and len(nz) == len(z) + 1
    if not g.is_independent(nz):
        raise AssertionError("precondition: rule 2 should have applied first")
    return z


def apply_rule3(inst: ReducedInstance, Z) -> ReducedInstance:
    g = inst.graph
    Z = frozenset(Z)
    nz = frozenset(g.neighborhood(Z))
    if not g.is_independent(Z) or not g.is_independent(nz) or len(nz) != len(Z) + 1:
        raise ValueError("rule 3 needs independent Z and N(Z) with |N(Z)| = |Z| + 1")
    shrunk, z = g.delete_vertices(Z).identify(nz)
    out = _extend(inst, shrunk, inst.k - len(Z), StructionR3(Z, nz, z))
    if out.mu > inst.mu:
        raise AssertionError(f"rule 3 increased the measure: {inst.mu} -> {out.mu}")
    return out


# -- fixed point -----------------------------------------------------------------

def _reduce_graph(g: Graph) -> tuple[Graph, int, tuple]:
    """Reduce ``g`` to a fixed point; returns (graph, total k-charge, trace)."""
    memo = g.lineage_memo
    key = ("reduce", g.key())
    hit = memo.get(key)
    if hit is not None:
        return hit
    # budget 0 is a placeholder: the rules never look at k
    cur = ReducedInstance(g, 0, (), g)
    while cur.graph.n:
        h = cur.graph
        if _rule1_applies(h):
            cur = apply_rule1(cur)
            continue
        if min(surplus_profile(h)) >= 2:
            break
        z = find_rule2_set(h)
        if z is not None:
            cur = apply_rule2(cur, z)
            continue
        cur = apply_rule3(cur, find_rule3_set(h))
    result = (cur.graph, -cur.k, cur.trace)
    memo[key] = result
    return result


def reduce_exhaustively(inst: ReducedInstance) -> ReducedInstance:
    """Apply Rules 1, 2, 3 in priority order until none applies."""
    graph, charge, trace = _reduce_graph(inst.graph)
    return _extend(inst, graph, inst.k - charge, *trace)


def is_reduced(g: Graph) -> bool:
    return g.n == 0 or (not _rule1_applies(g) and min(surplus_profile(g)) >= 2)


# -- lifting ---------------------------------------------------------------------

def lift_cover(trace, cover, graph: Graph | None = None, source: Graph | None = None) -> set:
    """Turn a cover of the reduced graph into a cover of the graph the trace started from.

    If ``graph``/``source`` are given, the cover is checked against the reduced
    graph before lifting and the result against the source afterwards.
    """
    out = set(cover)
    if graph is not None and not graph.is_vertex_cover(out):
        raise LiftError("not a vertex cover of the reduced graph")
    for step in reversed(trace):
        if isinstance(step, ForcedOnes):
            out |= step.vertices
        elif isinstance(step, ForcedZeros):
            if out & step.vertices:
                raise LiftError("forced-zero vertex in the cover")
        elif isinstance(step, StructionR2):
            out |= step.NZ
        elif isinstance(step, StructionR3):
            if step.z in out:
                out.discard(step.z)
                out |= step.NZ
            else:
                out |= step.Z
        else:
            raise TypeError(f"unknown trace step {step!r}")
    if source is not None and not source.is_vertex_cover(out):
        raise LiftError("lifted set does not cover the source graph")
    return out


def trace_charge(trace) -> int:
    """Total decrease of k along the trace (= |lifted| - |cover|)."""
    total = 0
    for step in trace:
        if isinstance(step, ForcedOnes):
            total += len(step.vertices)
        elif isinstance(step, StructionR2):
            total += len(step.NZ)
        elif isinstance(step, StructionR3):
            total += len(step.Z)
    return total


def _ids(vs) -> str:
    return ",".join(str(v) for v in sorted(vs))


def format_trace(trace) -> str:
    """One line per step: ``ONES``, ``ZEROS``, ``R2 Z= N=``, ``R3 Z= N= z=``."""
    lines = []
    for step in trace:
        if isinstance(step, ForcedOnes):
            lines.append(" ".join(["ONES", *map(str, sorted(step.vertices))]))
        elif isinstance(step, ForcedZeros):
            lines.append(" ".join(["ZEROS", *map(str, sorted(step.vertices))]))
        elif isinstance(step, StructionR2):
            lines.append(f"R2 Z={_ids(step.Z)} N={_ids(step.NZ)}")
        else:
            lines.append(f"R3 Z={_ids(step.Z)} N={_ids(step.NZ)} z={step.z}")
    return "\n".join(lines) + ("\n" if lines else "")


def parse_trace(text: str) -> tuple:
    def ids(s: str) -> frozenset:
        return frozenset(int(t) for t in s.split(",") if t)

    steps = []
    for line in text.splitlines():
        parts = line.split()
        if not parts:
            continue
        head, rest = parts[0], parts[1:]
        if head == "ONES":
            steps.append(ForcedOnes(frozenset(map(int, rest))))
        elif head == "ZEROS":
            steps.append(ForcedZeros(frozenset(map(int, rest))))
        else:
            fields = dict(p.split("=", 1) for p in rest)
            if head == "R2":
                steps.append(StructionR2(ids(fields["Z"]), ids(fields["N"])))
            elif head == "R3":
                steps.append(StructionR3(ids(fields["Z"]), ids(fields["N"]), int(fields["z"])))
            else:
                raise ValueError(f"unknown trace line {line!r}")
    return tuple(steps)
