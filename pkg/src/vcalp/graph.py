"""Simple undirected graphs with stable vertex identifiers.

Every mutation returns a new :class:`Graph`; inputs are never modified.
Vertex identifiers are small integers handed out by an allocator shared by
all graphs derived from the same parsed input, so identifiers created by
:meth:`Graph.identify` are never reused within one solver run.
"""

from __future__ import annotations

import itertools
import re
from collections import deque
from typing import Hashable, Iterable, Iterator


class GraphError(ValueError):
    """Malformed graph input or an invalid graph operation."""


class ParseError(GraphError):
    def __init__(self, lineno: int, message: str):
        super().__init__(f"line {lineno}: {message}")
        self.lineno = lineno


class Merged(tuple):
    """Origin tag of a vertex created by identifying other vertices."""

    def __repr__(self) -> str:
        return f"merged{tuple.__repr__(self)}"


class _Allocator:
    # ``memo`` lets the reducer share work between graphs of one lineage
    __slots__ = ("_next", "memo")

    def __init__(self, start: int = 0):
        self._next = start
        self.memo: dict = {}

    def take(self) -> int:
        value = self._next
        self._next += 1
        return value

    def reserve_past(self, vid: int) -> None:
        if vid >= self._next:
            self._next = vid + 1


class Graph:
    """Immutable simple undirected graph.

    ``origin(v)`` is either the input label of ``v`` or a :class:`Merged`
    tuple listing the vertices that were identified to create it.
    """

    __slots__ = ("_adj", "_origin", "_alloc", "_sorted", "_m", "_cache")

    def __init__(self, adj: dict[int, frozenset[int]], origin: dict[int, Hashable],
                 alloc: _Allocator | None = None):
        self._adj = adj
        self._origin = origin
        if alloc is None:
            alloc = _Allocator(max(adj, default=-1) + 1)
        self._alloc = alloc
        self._sorted: tuple[int, ...] | None = None
        self._m: int | None = None
        # per-value memo used by the LP engine
        self._cache: dict = {}

    # -- construction -----------------------------------------------------

    @classmethod
    def from_edges(cls, edges: Iterable[tuple[Hashable, Hashable]],
                   vertices: Iterable[Hashable] = ()) -> "Graph":
        """Build a graph from labelled edges.

        Labels are sorted and mapped to identifiers ``0..n-1`` in that order.
        Duplicate edges collapse; self-loops raise :class:`GraphError`.
        """
        edges = list(edges)
        labels = set(vertices)
        for u, v in edges:
            if u == v:
                raise GraphError(f"self-loop on vertex {u!r}")
            labels.add(u)
            labels.add(v)
        order = sorted(labels)
        ids = {label: i for i, label in enumerate(order)}
        adj: dict[int, set[int]] = {i: set() for i in range(len(order))}
        for u, v in edges:
            adj[ids[u]].add(ids[v])
            adj[ids[v]].add(ids[u])
        return cls({v: frozenset(ns) for v, ns in adj.items()},
                   {i: label for i, label in enumerate(order)})

    @classmethod
    def empty(cls) -> "Graph":
        return cls({}, {})

    def _derive(self, adj: dict[int, frozenset[int]],
                origin: dict[int, Hashable] | None = None) -> "Graph":
        if origin is None:
            origin = {v: self._origin[v] for v in adj}
        return Graph(adj, origin, self._alloc)

    # -- queries ----------------------------------------------------------

    def __len__(self) -> int:
        return len(self._adj)

    def __contains__(self, v: object) -> bool:
        return v in self._adj

    def __iter__(self) -> Iterator[int]:
        return iter(self.vertices())

    def __repr__(self) -> str:
        return f"Graph(n={len(self)}, m={self.edge_count})"

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Graph):
            return NotImplemented
        return self._adj == other._adj

    def __hash__(self) -> int:
        return hash(self.key())

    def key(self) -> tuple:
        """Hashable fingerprint of the labelled structure (identifiers and edges)."""
        if "key" not in self._cache:
            self._cache["key"] = tuple((v, tuple(sorted(self._adj[v]))) for v in self.vertices())
        return self._cache["key"]

    def vertices(self) -> tuple[int, ...]:
        if self._sorted is None:
            self._sorted = tuple(sorted(self._adj))
        return self._sorted

    @property
    def n(self) -> int:
        return len(self._adj)

    @property
    def edge_count(self) -> int:
        if self._m is None:
            self._m = sum(len(ns) for ns in self._adj.values()) // 2
        return self._m

    m = edge_count

    def neighbors(self, v: int) -> frozenset[int]:
        try:
            return self._adj[v]
        except KeyError:
            raise GraphError(f"unknown vertex {v}") from None

    def sorted_neighbors(self, v: int) -> list[int]:
        return sorted(self.neighbors(v))

    def degree(self, v: int) -> int:
        return len(self.neighbors(v))

    def has_edge(self, u: int, v: int) -> bool:
        return v in self._adj.get(u, ())

    def edges(self) -> list[tuple[int, int]]:
        """All edges ``(u, v)`` with ``u < v`` in ascending order."""
        return [(u, v) for u in self.vertices() for v in sorted(self._adj[u]) if u < v]

    def origin(self, v: int) -> Hashable:
        return self._origin[v]

    @property
    def lineage_memo(self) -> dict:
        """Scratch memo shared by every graph derived from the same input."""
        return self._alloc.memo

    def labels(self, vertices: Iterable[int]) -> list:
        """Input labels behind ``vertices``, expanding merged vertices recursively."""
        out = []
        stack = list(vertices)
        while stack:
            v = stack.pop()
            tag = self._origin.get(v, v) if isinstance(v, int) else v
            if isinstance(tag, Merged):
                raise GraphError(f"vertex {v} is merged; lift the cover first")
            out.append(tag)
        return sorted(out)

    def neighborhood(self, vertices: Iterable[int]) -> set[int]:
        """Open neighbourhood ``N(S)`` of a vertex set."""
        s = set(vertices)
        out: set[int] = set()
        for v in s:
            out |= self.neighbors(v)
        return out - s

    def closed_neighborhood(self, vertices: Iterable[int]) -> set[int]:
        s = set(vertices)
        return self.neighborhood(s) | s

    def is_independent(self, vertices: Iterable[int]) -> bool:
        s = set(vertices)
        return all(not (self.neighbors(v) & s) for v in s)

    def is_clique(self, vertices: Iterable[int]) -> bool:
        s = list(vertices)
        return all(self.has_edge(a, b) for a, b in itertools.combinations(s, 2))

    def is_vertex_cover(self, cover: Iterable[int]) -> bool:
        c = set(cover)
        return all(u in c or v in c for u in self._adj for v in self._adj[u])

    def degrees(self) -> dict[int, int]:
        return {v: len(ns) for v, ns in self._adj.items()}

    def min_degree(self) -> int:
        return min((len(ns) for ns in self._adj.values()), default=0)

    def max_degree(self) -> int:
        return max((len(ns) for ns in self._adj.values()), default=0)

    # -- value-semantics mutation ------------------------------------------

    def _check_known(self, vertices: Iterable[int]) -> set[int]:
        s = set(vertices)
        unknown = s - self._adj.keys()
        if unknown:
            raise GraphError(f"unknown vertices {sorted(unknown)}")
        return s

    def delete_vertices(self, vertices: Iterable[int]) -> "Graph":
        """Return ``G[V \\ S]``."""
        s = self._check_known(vertices)
        if not s:
            return self
        adj = {v: (ns - s if ns & s else ns) for v, ns in self._adj.items() if v not in s}
        return self._derive(adj)

    def induced(self, vertices: Iterable[int]) -> "Graph":
        keep = self._check_known(vertices)
        adj = {v: self._adj[v] & keep for v in keep}
        return self._derive(adj)

    def identify(self, vertices: Iterable[int]) -> tuple["Graph", int]:
        """Replace ``W`` by one fresh vertex adjacent to ``N(W) \\ W``."""
        w = self._check_known(vertices)
        if len(w) < 2:
            raise GraphError("identify needs at least two vertices")
        z = self._alloc.take()
        nz = frozenset(self.neighborhood(w))
        adj: dict[int, frozenset[int]] = {}
        for v, ns in self._adj.items():
            if v in w:
                continue
            if ns & w:
                ns = (ns - w) | {z}
            adj[v] = ns
        adj[z] = nz
        origin = {v: self._origin[v] for v in adj if v != z}
        origin[z] = Merged(sorted(w))
        return self._derive(adj, origin), z

    def add_vertex_with_edges(self, neighbors: Iterable[int]) -> tuple["Graph", int]:
        """Return a copy with one fresh vertex adjacent to ``neighbors``."""
        ns = frozenset(self._check_known(neighbors))
        z = self._alloc.take()
        adj = {v: (adj_v | {z} if v in ns else adj_v) for v, adj_v in self._adj.items()}
        adj[z] = ns
        origin = dict(self._origin)
        origin[z] = z
        return Graph(adj, origin, self._alloc), z

    def components(self) -> list["Graph"]:
        """Connected components ordered by their smallest identifier."""
        seen: set[int] = set()
        comps: list[Graph] = []
        for s in self.vertices():
            if s in seen:
                continue
            seen.add(s)
            part = [s]
            queue = deque([s])
            while queue:
                u = queue.popleft()
                for w in self._adj[u]:
                    if w not in seen:
                        seen.add(w)
                        part.append(w)
                        queue.append(w)
            comps.append(self.induced(part))
        return comps

    def complement(self) -> "Graph":
        every = frozenset(self._adj)
        adj = {v: every - ns - {v} for v, ns in self._adj.items()}
        return self._derive(adj)

    def girth(self) -> float:
        """Length of a shortest cycle (``inf`` for forests), via BFS from every vertex."""
        best = float("inf")
        for s in self.vertices():
            dist = {s: 0}
            parent = {s: -1}
            queue = deque([s])
            while queue:
                u = queue.popleft()
                if 2 * dist[u] + 1 >= best:
                    break
                for w in self._adj[u]:
                    if w not in dist:
                        dist[w] = dist[u] + 1
                        parent[w] = u
                        queue.append(w)
                    elif parent[u] != w:
                        best = min(best, dist[u] + dist[w] + 1)
        return best

    def two_coloring(self) -> dict[int, int] | None:
        """A proper 2-colouring, or ``None`` if the graph has an odd cycle."""
        color: dict[int, int] = {}
        for s in self.vertices():
            if s in color:
                continue
            color[s] = 0
            queue = deque([s])
            while queue:
                u = queue.popleft()
                for w in self._adj[u]:
                    if w not in color:
                        color[w] = 1 - color[u]
                        queue.append(w)
                    elif color[w] == color[u]:
                        return None
        return color

    def is_bipartite(self) -> bool:
        return self.two_coloring() is not None

    def to_dimacs(self) -> str:
        """DIMACS text with vertices renumbered ``1..n`` in identifier order."""
        pos = {v: i + 1 for i, v in enumerate(self.vertices())}
        lines = [f"p edge {self.n} {self.edge_count}"]
        lines.extend(f"e {pos[u]} {pos[v]}" for u, v in self.edges())
        return "\n".join(lines) + "\n"


# -- parsing -------------------------------------------------------------------

_INT = re.compile(r"[+]?\d+$")


def _label(token: str, lineno: int) -> int:
    if not _INT.match(token):
        raise ParseError(lineno, f"expected a positive integer vertex label, got {token!r}")
    value = int(token)
    if value <= 0:
        raise ParseError(lineno, f"vertex labels must be positive, got {value}")
    return value


def parse_edge_list(text: str, format: str = "auto") -> Graph:
    """Parse DIMACS (``p edge n m`` / ``e u v``) or plain ``u v`` edge lists.

    ``format`` is ``"dimacs"``, ``"plain"`` or ``"auto"`` (DIMACS if any line
    starts with ``p`` or ``e``).  Lines starting with ``c`` or ``#`` are
    comments.  Self-loops are rejected with the offending line number.
    """
    lines = text.splitlines()
    if format == "auto":
        format = "plain"
        for raw in lines:
            head = raw.split(None, 1)[:1]
            if head and head[0] in ("p", "e"):
                format = "dimacs"
                break
    if format not in ("dimacs", "plain"):
        raise GraphError(f"unknown format {format!r}")

    edges: list[tuple[int, int]] = []
    declared: range | None = None
    for lineno, raw in enumerate(lines, start=1):
        parts = raw.split()
        if not parts or parts[0] in ("c", "#") or parts[0].startswith("#"):
            continue
        if format == "dimacs":
            kind = parts[0]
            if kind == "p":
                if len(parts) != 4 or parts[1] not in ("edge", "col"):
                    raise ParseError(lineno, f"bad problem line {raw.strip()!r}")
                if declared is not None:
                    raise ParseError(lineno, "duplicate problem line")
                declared = range(1, _label(parts[2], lineno) + 1) if parts[2] != "0" else range(0)
                continue
            if kind != "e" or len(parts) != 3:
                raise ParseError(lineno, f"bad edge line {raw.strip()!r}")
            u, v = _label(parts[1], lineno), _label(parts[2], lineno)
            if declared is not None and (u not in declared or v not in declared):
                raise ParseError(lineno, f"vertex out of declared range 1..{len(declared)}")
        else:
            if len(parts) != 2:
                raise ParseError(lineno, f"expected 'u v', got {raw.strip()!r}")
            u, v = _label(parts[0], lineno), _label(parts[1], lineno)
        if u == v:
            raise ParseError(lineno, f"self-loop on vertex {u}")
        edges.append((u, v))
    return Graph.from_edges(edges, declared or ())


def read_graph(path, format: str = "auto") -> Graph:
    with open(path, encoding="utf-8") as fh:
        return parse_edge_list(fh.read(), format)


# -- named graphs used throughout tests and the CLI -----------------------------

def cycle(n: int) -> Graph:
    return Graph.from_edges([(i, i % n + 1) for i in range(1, n + 1)])


def path(n: int) -> Graph:
    return Graph.from_edges([(i, i + 1) for i in range(1, n)], range(1, n + 1))


def complete(n: int) -> Graph:
    return Graph.from_edges(itertools.combinations(range(1, n + 1), 2), range(1, n + 1))


def star(leaves: int) -> Graph:
    return Graph.from_edges([(1, i) for i in range(2, leaves + 2)])


def disjoint_union(*graphs: Graph) -> Graph:
    edges = []
    vertices = []
    offset = 0
    for g in graphs:
        pos = {v: offset + i + 1 for i, v in enumerate(g.vertices())}
        vertices.extend(pos.values())
        edges.extend((pos[u], pos[v]) for u, v in g.edges())
        offset += g.n
    return Graph.from_edges(edges, vertices)


def petersen() -> Graph:
    outer = [(i, i % 5 + 1) for i in range(1, 6)]
    spokes = [(i, i + 5) for i in range(1, 6)]
    inner = [(6 + i, 6 + (i + 2) % 5) for i in range(5)]
    return Graph.from_edges(outer + spokes + inner)


def hypercube(d: int) -> Graph:
    return Graph.from_edges((i + 1, (i ^ (1 << b)) + 1)
                            for i in range(1 << d) for b in range(d) if i < i ^ (1 << b))


def lcf(n: int, shifts: list[int], repeats: int) -> Graph:
    """Cubic Hamiltonian graph from LCF notation."""
    jumps = shifts * repeats
    if len(jumps) != n:
        raise GraphError("LCF shifts do not cover the cycle")
    edges = [(i + 1, (i + 1) % n + 1) for i in range(n)]
    edges += [(i + 1, (i + jumps[i]) % n + 1) for i in range(n)]
    return Graph.from_edges(edges)


def heawood() -> Graph:
    return lcf(14, [5, -5], 7)


def mcgee() -> Graph:
    return lcf(24, [12, 7, -7], 8)


def circulant(n: int, jumps: Iterable[int]) -> Graph:
    return Graph.from_edges({tuple(sorted((i + 1, (i + j) % n + 1))) for i in range(n) for j in jumps})
