"""Tree decompositions: parsing, validation, min-fill heuristic, nice form.

A nice tree decomposition is a rooted tree of typed nodes (leaf /
introduce / forget / join) with an empty root bag.  ``subtree_vertices``
gives, for every node x, the set of vertices already forgotten below x;
the dynamic programming tables are indexed by signatures over the bag
and range over broadcasts of that forgotten set.
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass
from typing import Iterable

from .errors import (
    DecompositionFormatError,
    InvalidDecompositionError,
)
from .graph import WeightedGraph

LEAF = "leaf"
INTRODUCE = "introduce"
FORGET = "forget"
JOIN = "join"


@dataclass(frozen=True)
class TreeDecomposition:
    """Bags indexed by node id and an undirected tree over those ids."""

    bags: dict[int, frozenset[int]]
    tree_edges: tuple[tuple[int, int], ...]

    @property
    def width(self) -> int:
        return max(len(b) for b in self.bags.values()) - 1

    def neighbors(self) -> dict[int, list[int]]:
        nbrs: dict[int, list[int]] = {x: [] for x in self.bags}
        for x, y in self.tree_edges:
            nbrs[x].append(y)
            nbrs[y].append(x)
        return {x: sorted(ys) for x, ys in nbrs.items()}

    def validate(self, g: WeightedGraph) -> None:
        """Raise InvalidDecompositionError naming the violated property."""
        if not self.bags:
            raise InvalidDecompositionError("decomposition has no bags")
        nbrs = self.neighbors()
        for x, y in self.tree_edges:
            if x not in self.bags or y not in self.bags:
                raise InvalidDecompositionError(f"tree edge ({x}, {y}) references unknown bag")
        # must be a tree
        if len(self.tree_edges) != len(self.bags) - 1:
            raise InvalidDecompositionError(
                f"bag tree is not a tree: {len(self.bags)} bags, {len(self.tree_edges)} edges"
            )
        seen = {next(iter(self.bags))}
        stack = list(seen)
        while stack:
            x = stack.pop()
            for y in nbrs[x]:
                if y not in seen:
                    seen.add(y)
                    stack.append(y)
        if len(seen) != len(self.bags):
            raise InvalidDecompositionError("bag tree is not connected")
        # property 1: vertex coverage
        covered = set().union(*self.bags.values())
        missing = set(g.vertices()) - covered
        if missing:
            raise InvalidDecompositionError(
                f"vertex coverage violated: vertex {min(missing)} appears in no bag"
            )
        if covered - set(g.vertices()):
            bad = min(covered - set(g.vertices()))
            raise InvalidDecompositionError(f"bag contains unknown vertex {bad}")
        # property 2: edge coverage
        for u, v, _ in g.edges:
            if not any(u in b and v in b for b in self.bags.values()):
                raise InvalidDecompositionError(
                    f"edge coverage violated: edge {{{u}, {v}}} is in no bag"
                )
        # property 3: connected traces
        for v in g.vertices():
            holding = {x for x, b in self.bags.items() if v in b}
            start = next(iter(holding))
            reach = {start}
            stack = [start]
            while stack:
                x = stack.pop()
                for y in nbrs[x]:
                    if y in holding and y not in reach:
                        reach.add(y)
                        stack.append(y)
            if reach != holding:
                raise InvalidDecompositionError(
                    f"connectivity violated: bags containing vertex {v} are not connected"
                )


def parse_td(text: str, g: WeightedGraph | None = None) -> TreeDecomposition:
    """Parse PACE-style .td text; validates against ``g`` when given."""
    declared = None
    bags: dict[int, frozenset[int]] = {}
    edges: list[tuple[int, int]] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("c"):
            continue
        parts = line.split()
        if parts[0] == "s":
            if declared is not None:
                raise DecompositionFormatError(f"line {lineno}: repeated 's td' line")
            if len(parts) != 5 or parts[1] != "td":
                raise DecompositionFormatError(
                    f"line {lineno}: expected 's td <bags> <width+1> <n>'"
                )
            try:
                declared = (int(parts[2]), int(parts[3]), int(parts[4]))
            except ValueError:
                raise DecompositionFormatError(f"line {lineno}: non-integer header") from None
        elif parts[0] == "b":
            if declared is None:
                raise DecompositionFormatError(f"line {lineno}: bag line before 's td' line")
            try:
                bag_id = int(parts[1])
                content = frozenset(int(t) for t in parts[2:])
            except (ValueError, IndexError):
                raise DecompositionFormatError(f"line {lineno}: malformed bag line") from None
            if bag_id in bags:
                raise DecompositionFormatError(f"line {lineno}: repeated bag id {bag_id}")
            bags[bag_id] = content
        else:
            if declared is None:
                raise DecompositionFormatError(f"line {lineno}: edge line before 's td' line")
            if len(parts) != 2:
                raise DecompositionFormatError(f"line {lineno}: expected '<bag> <bag>'")
            try:
                edges.append((int(parts[0]), int(parts[1])))
            except ValueError:
                raise DecompositionFormatError(f"line {lineno}: non-integer edge") from None
    if declared is None:
        raise DecompositionFormatError("missing 's td' header")
    num_bags, width_plus_1, n = declared
    if len(bags) != num_bags:
        raise DecompositionFormatError(f"header declares {num_bags} bags, file has {len(bags)}")
    if bags and max(len(b) for b in bags.values()) > width_plus_1:
        raise DecompositionFormatError(
            f"a bag exceeds the declared maximum size {width_plus_1}"
        )
    td = TreeDecomposition(bags=bags, tree_edges=tuple(edges))
    if g is not None:
        if n != g.n:
            raise DecompositionFormatError(f"header declares n={n}, graph has n={g.n}")
        td.validate(g)
    return td


def format_td(td: TreeDecomposition, n: int) -> str:
    lines = [f"s td {len(td.bags)} {td.width + 1} {n}"]
    for bag_id in sorted(td.bags):
        content = " ".join(str(v) for v in sorted(td.bags[bag_id]))
        lines.append(f"b {bag_id} {content}".rstrip())
    for x, y in sorted(td.tree_edges):
        lines.append(f"{x} {y}")
    return "\n".join(lines) + "\n"


def _td_from_elimination(g: WeightedGraph, order: list[int]) -> TreeDecomposition:
    """Standard clique-by-clique construction from an elimination ordering."""
    nbrs: dict[int, set[int]] = {v: {u for u, _ in g.adj[v]} for v in g.vertices()}
    pos = {v: i for i, v in enumerate(order)}
    bags: dict[int, frozenset[int]] = {}
    edges: list[tuple[int, int]] = []
    bag_of_vertex: dict[int, int] = {}
    for i, v in enumerate(order):
        rest = nbrs[v]
        bags[i + 1] = frozenset(rest | {v})
        bag_of_vertex[v] = i + 1
        for a in rest:
            nbrs[a].discard(v)
        for a in rest:
            for b in rest:
                if a < b and b not in nbrs[a]:
                    nbrs[a].add(b)
                    nbrs[b].add(a)
        if rest:
            nxt = min(rest, key=lambda u: pos[u])
            edges.append((i + 1, pos[nxt] + 1))
    return TreeDecomposition(bags=bags, tree_edges=tuple(edges))


def heuristic_decompose(g: WeightedGraph) -> TreeDecomposition:
    """Min-fill elimination ordering; ties by degree, then lowest id.

    No optimality promise: the DP is correct at any width, only slower.
    """
    nbrs: dict[int, set[int]] = {v: {u for u, _ in g.adj[v]} for v in g.vertices()}
    remaining = set(g.vertices())
    order: list[int] = []
    # degree<=1 vertices always have fill 0 and beat everything else, so a
    # lazy heap of them avoids the quadratic scan on pendant-heavy graphs.
    deg1 = [v for v in remaining if len(nbrs[v]) <= 1]
    heapq.heapify(deg1)
    while remaining:
        v = None
        while deg1:
            cand = heapq.heappop(deg1)
            if cand in remaining and len(nbrs[cand]) <= 1:
                v = cand
                break
        if v is None:
            best = None
            for u in sorted(remaining):
                nb = nbrs[u]
                fill = 0
                nb_list = sorted(nb)
                for i, a in enumerate(nb_list):
                    na = nbrs[a]
                    for b in nb_list[i + 1 :]:
                        if b not in na:
                            fill += 1
                key = (fill, len(nb), u)
                if best is None or key < best[0]:
                    best = (key, u)
            v = best[1]
        order.append(v)
        remaining.discard(v)
        rest = sorted(nbrs[v])
        for a in rest:
            nbrs[a].discard(v)
        for i, a in enumerate(rest):
            for b in rest[i + 1 :]:
                if b not in nbrs[a]:
                    nbrs[a].add(b)
                    nbrs[b].add(a)
        for a in rest:
            if len(nbrs[a]) <= 1:
                heapq.heappush(deg1, a)
        nbrs[v] = set()
    return _td_from_elimination(g, order)


def random_decompose(g: WeightedGraph, rng) -> TreeDecomposition:
    """Decomposition from a random elimination ordering (test utility)."""
    order = list(g.vertices())
    rng.shuffle(order)
    return _td_from_elimination(g, order)


@dataclass(frozen=True)
class NiceNode:
    kind: str
    bag: tuple[int, ...]
    children: tuple[int, ...]
    vertex: int | None = None


class NiceTreeDecomposition:
    """Rooted, typed refinement of a tree decomposition (root bag empty)."""

    __slots__ = ("nodes", "root", "width", "n", "_subtree", "_postorder")

    def __init__(self, nodes: list[NiceNode], root: int, width: int, n: int):
        self.nodes = nodes
        self.root = root
        self.width = width
        self.n = n
        self._postorder: list[int] | None = None
        self._subtree: list[frozenset[int]] | None = None

    def __len__(self) -> int:
        return len(self.nodes)

    def postorder(self) -> list[int]:
        if self._postorder is None:
            out: list[int] = []
            stack: list[tuple[int, bool]] = [(self.root, False)]
            while stack:
                x, expanded = stack.pop()
                if expanded:
                    out.append(x)
                else:
                    stack.append((x, True))
                    for c in reversed(self.nodes[x].children):
                        stack.append((c, False))
            self._postorder = out
        return self._postorder

    def subtree_vertices(self, x: int) -> frozenset[int]:
        """Vertices forgotten strictly below x: (union of bags in T_x) minus B_x."""
        if self._subtree is None:
            sub: list[frozenset[int]] = [frozenset()] * len(self.nodes)
            for x_ in self.postorder():
                node = self.nodes[x_]
                if node.kind == LEAF:
                    sub[x_] = frozenset()
                elif node.kind == INTRODUCE:
                    sub[x_] = sub[node.children[0]]
                elif node.kind == FORGET:
                    sub[x_] = sub[node.children[0]] | {node.vertex}
                else:
                    sub[x_] = sub[node.children[0]] | sub[node.children[1]]
            self._subtree = sub
        return self._subtree[x]

    def validate(self, g: WeightedGraph) -> None:
        """Standalone nice-decomposition validator; raises on any violation."""
        nodes = self.nodes
        if nodes[self.root].bag:
            raise InvalidDecompositionError("root bag is not empty")
        forgotten: dict[int, int] = {}
        for x, node in enumerate(nodes):
            if tuple(sorted(node.bag)) != node.bag:
                raise InvalidDecompositionError(f"node {x}: bag is not sorted")
            if node.kind == LEAF:
                if node.bag or node.children:
                    raise InvalidDecompositionError(f"node {x}: leaf must have empty bag")
            elif node.kind == INTRODUCE:
                (c,) = node.children
                cb = set(nodes[c].bag)
                if node.vertex in cb or set(node.bag) != cb | {node.vertex}:
                    raise InvalidDecompositionError(
                        f"node {x}: introduce must add exactly one new vertex"
                    )
            elif node.kind == FORGET:
                (c,) = node.children
                cb = set(nodes[c].bag)
                if node.vertex not in cb or set(node.bag) != cb - {node.vertex}:
                    raise InvalidDecompositionError(
                        f"node {x}: forget must remove exactly one bag vertex"
                    )
                forgotten[node.vertex] = forgotten.get(node.vertex, 0) + 1
            elif node.kind == JOIN:
                l, r = node.children
                if nodes[l].bag != node.bag or nodes[r].bag != node.bag:
                    raise InvalidDecompositionError(
                        f"node {x}: join children must have identical bags"
                    )
            else:
                raise InvalidDecompositionError(f"node {x}: unknown kind {node.kind!r}")
        for v in g.vertices():
            if forgotten.get(v, 0) != 1:
                raise InvalidDecompositionError(
                    f"vertex {v} is forgotten {forgotten.get(v, 0)} times (expected 1)"
                )
        if self.subtree_vertices(self.root) != set(g.vertices()):
            raise InvalidDecompositionError("root subtree does not cover all vertices")
        width = max(len(node.bag) for node in nodes) - 1
        if width != self.width:
            raise InvalidDecompositionError(f"stored width {self.width} != actual {width}")
        # the underlying bags must still form a tree decomposition
        bags = {x + 1: frozenset(node.bag) for x, node in enumerate(nodes)}
        edges = tuple(
            (x + 1, c + 1) for x, node in enumerate(nodes) for c in node.children
        )
        TreeDecomposition(bags=bags, tree_edges=edges).validate(g)


class _NiceBuilder:
    def __init__(self):
        self.nodes: list[NiceNode] = []

    def add(self, kind: str, bag: tuple[int, ...], children: tuple[int, ...],
            vertex: int | None = None) -> int:
        self.nodes.append(NiceNode(kind, bag, children, vertex))
        return len(self.nodes) - 1

    def chain_from_leaf(self, bag: Iterable[int]) -> int:
        top = self.add(LEAF, (), ())
        cur: list[int] = []
        for v in sorted(bag):
            cur.append(v)
            top = self.add(INTRODUCE, tuple(cur), (top,), v)
        return top

    def morph(self, top: int, src: frozenset[int], dst: frozenset[int]) -> int:
        cur = set(src)
        for v in sorted(src - dst):
            cur.discard(v)
            top = self.add(FORGET, tuple(sorted(cur)), (top,), v)
        for v in sorted(dst - src):
            cur.add(v)
            top = self.add(INTRODUCE, tuple(sorted(cur)), (top,), v)
        return top


def _simplify(td: TreeDecomposition) -> tuple[dict[int, frozenset[int]], dict[int, set[int]]]:
    """Contract bags contained in a neighboring bag (keeps width)."""
    bags = dict(td.bags)
    nbrs = {x: set(ys) for x, ys in td.neighbors().items()}
    changed = True
    while changed:
        changed = False
        for x in sorted(bags):
            for y in sorted(nbrs[x]):
                if bags[x] <= bags[y]:
                    for z in nbrs[x]:
                        if z != y:
                            nbrs[z].discard(x)
                            nbrs[z].add(y)
                            nbrs[y].add(z)
                    nbrs[y].discard(x)
                    del bags[x]
                    del nbrs[x]
                    changed = True
                    break
            if changed:
                break
    return bags, nbrs


def make_nice(td: TreeDecomposition) -> NiceTreeDecomposition:
    """Convert to nice form of the same width.

    Bags differ by exactly one vertex between consecutive structural
    nodes; join bags are materialized per child branch.
    """
    width = td.width
    bags, nbrs = _simplify(td)
    n = len(set().union(*td.bags.values())) if td.bags else 0
    builder = _NiceBuilder()
    root_id = min(bags)
    # iterative DFS producing, for every original node, a nice node whose
    # bag equals the original bag with all children branches merged below
    done: dict[int, int] = {}
    stack: list[tuple[int, int | None, bool]] = [(root_id, None, False)]
    while stack:
        x, parent, expanded = stack.pop()
        children = sorted(y for y in nbrs[x] if y != parent)
        if not expanded:
            stack.append((x, parent, True))
            for c in children:
                stack.append((c, x, False))
            continue
        if not children:
            done[x] = builder.chain_from_leaf(bags[x])
            continue
        branches = []
        for c in children:
            branches.append(builder.morph(done[c], bags[c], bags[x]))
        top = branches[0]
        bag_tuple = tuple(sorted(bags[x]))
        for other in branches[1:]:
            top = builder.add(JOIN, bag_tuple, (top, other))
        done[x] = top
    root = builder.morph(done[root_id], bags[root_id], frozenset())
    return NiceTreeDecomposition(builder.nodes, root, width, n)
