"""Weighted graphs, broadcasts, and broadcast validity predicates.

Graphs are simple, connected, undirected, with positive integer edge
weights (1 for unweighted input).  Vertices are numbered 1..n, matching
the file format; no internal remapping is needed beyond that.

Shortest-path data is computed lazily per source vertex and cached, so
large gadget graphs (10^5 vertices) can be handled without a full
all-pairs matrix.  Small graphs get the full matrix on demand.
"""

from __future__ import annotations

import heapq
from collections import deque
from dataclasses import dataclass, field
from typing import Iterable, Iterator

from .errors import (
    DisconnectedGraphError,
    DuplicateEdgeError,
    GraphFormatError,
    InvalidWeightError,
    ParameterError,
    SelfLoopError,
    UnknownVertexError,
    WitnessFormatError,
)


class WeightedGraph:
    """Immutable connected graph with cached shortest-path metrics."""

    __slots__ = ("n", "edges", "adj", "unit_weights", "_rows", "_ecc", "_diam")

    def __init__(self, n: int, edges: Iterable[tuple[int, int, int]]):
        if n < 1:
            raise GraphFormatError("vertex count must be >= 1")
        self.n = n
        adj: list[list[tuple[int, int]]] = [[] for _ in range(n + 1)]
        seen: set[tuple[int, int]] = set()
        norm: list[tuple[int, int, int]] = []
        unit = True
        for u, v, w in edges:
            if not (1 <= u <= n and 1 <= v <= n):
                raise GraphFormatError(f"edge endpoint out of range: ({u}, {v})")
            if u == v:
                raise SelfLoopError(f"self-loop at vertex {u}")
            if not isinstance(w, int) or w < 1:
                raise InvalidWeightError(f"edge ({u}, {v}) has weight {w} < 1")
            a, b = (u, v) if u < v else (v, u)
            if (a, b) in seen:
                raise DuplicateEdgeError(f"duplicate edge ({a}, {b})")
            seen.add((a, b))
            norm.append((a, b, w))
            adj[a].append((b, w))
            adj[b].append((a, w))
            if w != 1:
                unit = False
        self.edges: tuple[tuple[int, int, int], ...] = tuple(sorted(norm))
        self.adj = adj
        self.unit_weights = unit
        self._rows: dict[int, list[int]] = {}
        self._ecc: dict[int, int] = {}
        self._diam: int | None = None
        self._check_connected()

    def _check_connected(self) -> None:
        seen = bytearray(self.n + 1)
        seen[1] = 1
        stack = [1]
        count = 1
        while stack:
            v = stack.pop()
            for u, _ in self.adj[v]:
                if not seen[u]:
                    seen[u] = 1
                    count += 1
                    stack.append(u)
        if count != self.n:
            raise DisconnectedGraphError(
                f"graph is disconnected ({count} of {self.n} vertices reachable from 1)"
            )

    @property
    def m(self) -> int:
        return len(self.edges)

    def vertices(self) -> range:
        return range(1, self.n + 1)

    def check_vertex(self, v: int) -> None:
        if not (1 <= v <= self.n):
            raise UnknownVertexError(f"vertex {v} not in graph (n={self.n})")

    def dist_row(self, src: int) -> list[int]:
        """All distances from ``src`` (index 0 unused)."""
        row = self._rows.get(src)
        if row is None:
            row = self._bfs(src) if self.unit_weights else self._dijkstra(src)
            self._rows[src] = row
        return row

    def dist(self, u: int, v: int) -> int:
        return self.dist_row(u)[v]

    def _bfs(self, src: int) -> list[int]:
        dist = [-1] * (self.n + 1)
        dist[src] = 0
        queue = deque([src])
        while queue:
            v = queue.popleft()
            dv = dist[v]
            for u, _ in self.adj[v]:
                if dist[u] < 0:
                    dist[u] = dv + 1
                    queue.append(u)
        return dist

    def _dijkstra(self, src: int) -> list[int]:
        inf = float("inf")
        dist: list = [inf] * (self.n + 1)
        dist[src] = 0
        heap = [(0, src)]
        while heap:
            d, v = heapq.heappop(heap)
            if d > dist[v]:
                continue
            for u, w in self.adj[v]:
                nd = d + w
                if nd < dist[u]:
                    dist[u] = nd
                    heapq.heappush(heap, (nd, u))
        dist[0] = -1
        return dist

    def distance_matrix(self) -> list[list[int]]:
        """Full APSP table (``matrix[u][v]``); intended for small graphs."""
        for v in self.vertices():
            self.dist_row(v)
        return [self._rows.get(i, []) for i in range(self.n + 1)]

    def eccentricity(self, v: int) -> int:
        e = self._ecc.get(v)
        if e is None:
            row = self.dist_row(v)
            e = max(row[1:])
            self._ecc[v] = e
        return e

    @property
    def diam(self) -> int:
        if self._diam is None:
            self._diam = max(self.eccentricity(v) for v in self.vertices())
        return self._diam


def parse_graph(text: str) -> WeightedGraph:
    """Parse the ``p bcast`` graph format (see README for the grammar)."""
    n = m = -1
    edges: list[tuple[int, int, int]] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("c"):
            continue
        parts = line.split()
        if parts[0] == "p":
            if n >= 0:
                raise GraphFormatError(f"line {lineno}: repeated header line")
            if len(parts) != 4 or parts[1] != "bcast":
                raise GraphFormatError(f"line {lineno}: expected 'p bcast <n> <m>'")
            try:
                n, m = int(parts[2]), int(parts[3])
            except ValueError:
                raise GraphFormatError(f"line {lineno}: non-integer header fields") from None
            if n < 1 or m < 0:
                raise GraphFormatError(f"line {lineno}: invalid sizes n={n} m={m}")
        elif parts[0] == "e":
            if n < 0:
                raise GraphFormatError(f"line {lineno}: edge before header")
            if len(parts) not in (3, 4):
                raise GraphFormatError(f"line {lineno}: expected 'e <u> <v> [<w>]'")
            try:
                u, v = int(parts[1]), int(parts[2])
                w = int(parts[3]) if len(parts) == 4 else 1
            except ValueError:
                raise GraphFormatError(f"line {lineno}: non-integer edge fields") from None
            edges.append((u, v, w))
        else:
            raise GraphFormatError(f"line {lineno}: unrecognized line {line!r}")
    if n < 0:
        raise GraphFormatError("missing 'p bcast' header")
    if len(edges) != m:
        raise GraphFormatError(f"header declares {m} edges, file has {len(edges)}")
    return WeightedGraph(n, edges)


def format_graph(g: WeightedGraph) -> str:
    lines = [f"p bcast {g.n} {g.m}"]
    for u, v, w in g.edges:
        lines.append(f"e {u} {v}" if w == 1 and g.unit_weights else f"e {u} {v} {w}")
    return "\n".join(lines) + "\n"


@dataclass(frozen=True)
class Broadcast:
    """A vertex -> nonnegative integer assignment; zeros are not stored."""

    values: dict[int, int] = field(default_factory=dict)

    def __post_init__(self):
        for v, fv in self.values.items():
            if fv < 0:
                raise ParameterError(f"negative broadcast value {fv} at vertex {v}")
        zeros = [v for v, fv in self.values.items() if fv == 0]
        for v in zeros:
            del self.values[v]

    @property
    def value(self) -> int:
        return sum(self.values.values())

    @property
    def broadcasters(self) -> tuple[int, ...]:
        return tuple(sorted(self.values))

    def get(self, v: int) -> int:
        return self.values.get(v, 0)

    def max_value(self) -> int:
        return max(self.values.values(), default=0)

    def restrict(self, vertices) -> "Broadcast":
        keep = set(vertices)
        return Broadcast({v: fv for v, fv in self.values.items() if v in keep})

    def __iter__(self) -> Iterator[tuple[int, int]]:
        return iter(sorted(self.values.items()))


def parse_witness(text: str, g: WeightedGraph | None = None) -> Broadcast:
    """Parse witness lines ``v <vertex> <value>`` ending with ``value <total>``."""
    values: dict[int, int] = {}
    declared: int | None = None
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("c"):
            continue
        parts = line.split()
        if parts[0] == "v":
            if declared is not None:
                raise WitnessFormatError(f"line {lineno}: 'v' line after 'value' line")
            if len(parts) != 3:
                raise WitnessFormatError(f"line {lineno}: expected 'v <vertex> <value>'")
            try:
                v, fv = int(parts[1]), int(parts[2])
            except ValueError:
                raise WitnessFormatError(f"line {lineno}: non-integer fields") from None
            if fv < 0:
                raise WitnessFormatError(f"line {lineno}: negative value {fv}")
            if v in values:
                raise WitnessFormatError(f"line {lineno}: repeated vertex {v}")
            if g is not None and not (1 <= v <= g.n):
                raise UnknownVertexError(f"line {lineno}: vertex {v} not in graph (n={g.n})")
            values[v] = fv
        elif parts[0] == "value":
            if len(parts) != 2:
                raise WitnessFormatError(f"line {lineno}: expected 'value <total>'")
            try:
                declared = int(parts[1])
            except ValueError:
                raise WitnessFormatError(f"line {lineno}: non-integer total") from None
        else:
            raise WitnessFormatError(f"line {lineno}: unrecognized line {line!r}")
    if declared is None:
        raise WitnessFormatError("missing final 'value <total>' line")
    total = sum(values.values())
    if total != declared:
        raise WitnessFormatError(f"declared value {declared} != sum of values {total}")
    return Broadcast(values)


def format_witness(f: Broadcast) -> str:
    lines = [f"v {v} {fv}" for v, fv in f]
    lines.append(f"value {f.value}")
    return "\n".join(lines) + "\n"


def _check_support(g: WeightedGraph, f: Broadcast) -> None:
    for v in f.values:
        g.check_vertex(v)


def _within_cap(g: WeightedGraph, f: Broadcast, relaxed: bool) -> bool:
    if relaxed:
        if not f.values:
            return True
        return f.max_value() <= g.diam
    return all(fv <= g.eccentricity(v) for v, fv in f.values.items())


def is_independent_broadcast(g: WeightedGraph, f: Broadcast, relaxed: bool = True) -> bool:
    """No broadcaster hears another: d(u,v) > max(f(u), f(v)) for all pairs.

    ``relaxed`` caps values at the diameter instead of per-vertex
    eccentricity (the convention used by the solvers).
    """
    _check_support(g, f)
    if not _within_cap(g, f, relaxed):
        return False
    bc = f.broadcasters
    for i, u in enumerate(bc):
        row = g.dist_row(u)
        fu = f.get(u)
        for v in bc[i + 1 :]:
            fv = f.get(v)
            if row[v] <= (fu if fu > fv else fv):
                return False
    return True


def is_broadcast_packing(g: WeightedGraph, f: Broadcast, relaxed: bool = True) -> bool:
    """No two broadcasters within summed range: d(u,v) > f(u) + f(v)."""
    _check_support(g, f)
    if not _within_cap(g, f, relaxed):
        return False
    bc = f.broadcasters
    for i, u in enumerate(bc):
        row = g.dist_row(u)
        fu = f.get(u)
        for v in bc[i + 1 :]:
            if row[v] <= fu + f.get(v):
                return False
    return True


def broadcast_neighborhood(g: WeightedGraph, f: Broadcast, v: int) -> set[int]:
    """Ball of radius f(v) around v; requires f(v) > 0."""
    g.check_vertex(v)
    fv = f.get(v)
    if fv <= 0:
        raise ParameterError(f"vertex {v} is not broadcasting (f(v)=0)")
    row = g.dist_row(v)
    return {u for u in g.vertices() if row[u] <= fv}
