"""Exact solvers over nice tree decompositions.

One table engine, two signature semantics:

* broadcast independence: per bag vertex a pair (s1, s2) in {0..p}^2 --
  s1(v) = max(0, max_u(f(u) - d(u,v) + 1)) over broadcasters u of the
  forgotten set, s2(v) = min(p, min_u(d(u,v) - 1));
* broadcast packing: a single s(v) = max(-p-1, max_u(f(u) - d(u,v))).

Tables map packed signatures to the best achievable value plus a
back-pointer; witnesses are reconstructed by walking back-pointers from
the root, reading off the value chosen at each forget node.
"""

from __future__ import annotations

import concurrent.futures
import threading
from dataclasses import dataclass

from . import kernels
from .errors import InternalError, InvalidDecompositionError, ParameterError
from .graph import Broadcast, WeightedGraph, is_broadcast_packing, is_independent_broadcast
from .treedecomp import FORGET, INTRODUCE, JOIN, LEAF, NiceTreeDecomposition


@dataclass(frozen=True)
class DpRun:
    """All per-node tables of one solver run (kept for inspection/tests)."""

    problem: str
    p: int
    values: list  # node id -> dict of packed signature -> value
    backptrs: list
    backend: str


def _check_inputs(g: WeightedGraph, ntd: NiceTreeDecomposition, p: int) -> None:
    if p < 0 or p > g.diam:
        raise ParameterError(f"p={p} out of range [0, diam={g.diam}]")
    if ntd.subtree_vertices(ntd.root) != set(g.vertices()):
        raise InvalidDecompositionError("decomposition does not cover the graph's vertices")


def compute_tables(
    g: WeightedGraph,
    ntd: NiceTreeDecomposition,
    p: int,
    problem: str,
    threads: int = 1,
) -> DpRun:
    """Bottom-up table computation; identical result at any thread count."""
    _check_inputs(g, ntd, p)
    if threads < 1:
        raise ParameterError(f"threads must be >= 1 (got {threads})")
    dist = g.distance_matrix()
    kern = kernels.dp_kernels(problem, p, ntd.width)
    nodes = ntd.nodes
    vals: list = [None] * len(nodes)
    bps: list = [None] * len(nodes)

    def eval_node(x: int) -> None:
        node = nodes[x]
        if node.kind == LEAF:
            vals[x], bps[x] = kern.leaf(p)
        elif node.kind == INTRODUCE:
            c = node.children[0]
            cbag = nodes[c].bag
            row_getter = dist
            v = node.vertex
            dvec = tuple(row_getter[u][v] for u in cbag)
            j = node.bag.index(v)
            vals[x], bps[x] = kern.introduce(vals[c], len(cbag), j, dvec, p)
        elif node.kind == FORGET:
            c = node.children[0]
            cbag = nodes[c].bag
            v = node.vertex
            dvec = tuple(dist[u][v] for u in node.bag)
            j = cbag.index(v)
            vals[x], bps[x] = kern.forget(vals[c], len(cbag), j, dvec, p)
        else:
            l, r = node.children
            vals[x], bps[x] = kern.join(vals[l], vals[r], len(node.bag), p)

    order = ntd.postorder()
    if threads == 1:
        for x in order:
            eval_node(x)
    else:
        _parallel_eval(ntd, order, eval_node, threads)
    return DpRun(problem=problem, p=p, values=vals, backptrs=bps, backend=kern.name)


def _parallel_eval(ntd, order, eval_node, threads: int) -> None:
    """Schedule disjoint subtrees concurrently (same tables as sequential)."""
    nodes = ntd.nodes
    pending = {x: len(nodes[x].children) for x in order}
    parent: dict[int, int] = {}
    for x in order:
        for c in nodes[x].children:
            parent[c] = x
    lock = threading.Lock()

    def run_from(x):
        # evaluate x, then climb while this task completed the last child
        eval_node(x)
        cur = x
        while True:
            nxt = parent.get(cur)
            if nxt is None:
                return
            with lock:
                pending[nxt] -= 1
                ready = pending[nxt] == 0
            if not ready:
                return
            eval_node(nxt)
            cur = nxt

    leaves = [x for x in order if pending[x] == 0]
    with concurrent.futures.ThreadPoolExecutor(max_workers=threads) as pool:
        for fut in [pool.submit(run_from, x) for x in leaves]:
            fut.result()


def _root_entry(run: DpRun, ntd: NiceTreeDecomposition) -> tuple[int, int]:
    table = run.values[ntd.root]
    if len(table) != 1:
        raise InternalError(f"root table has {len(table)} signatures (expected 1)")
    ((key, val),) = table.items()
    return key, val


def _reconstruct(run: DpRun, ntd: NiceTreeDecomposition) -> Broadcast:
    key, _ = _root_entry(run, ntd)
    values: dict[int, int] = {}
    stack = [(ntd.root, key)]
    while stack:
        x, k = stack.pop()
        node = ntd.nodes[x]
        bp = run.backptrs[x][k]
        if node.kind == LEAF:
            continue
        if node.kind == INTRODUCE:
            stack.append((node.children[0], bp))
        elif node.kind == FORGET:
            child_key, l = bp
            if l:
                if node.vertex in values:
                    raise InternalError(f"vertex {node.vertex} assigned twice in witness")
                values[node.vertex] = l
            stack.append((node.children[0], child_key))
        else:
            lk, rk = bp
            stack.append((node.children[0], lk))
            stack.append((node.children[1], rk))
    return Broadcast(values)


def _solve(g, ntd, p, problem, threads):
    run = compute_tables(g, ntd, p, problem, threads=threads)
    _, value = _root_entry(run, ntd)
    witness = _reconstruct(run, ntd)
    if witness.value != value:
        raise InternalError(f"witness value {witness.value} != table optimum {value}")
    if witness.max_value() > p:
        raise InternalError(f"witness exceeds the p-cap ({witness.max_value()} > {p})")
    valid = (
        is_independent_broadcast(g, witness, relaxed=True)
        if problem == "bi"
        else is_broadcast_packing(g, witness, relaxed=True)
    )
    if not valid:
        raise InternalError("reconstructed witness fails validation")
    return value, witness


def solve_p_bi(
    g: WeightedGraph, ntd: NiceTreeDecomposition, p: int, threads: int = 1
) -> tuple[int, Broadcast]:
    """Maximum independent p-broadcast (diameter-capped definition)."""
    return _solve(g, ntd, p, "bi", threads)


def solve_p_bp(
    g: WeightedGraph, ntd: NiceTreeDecomposition, p: int, threads: int = 1
) -> tuple[int, Broadcast]:
    """Maximum p-broadcast packing (diameter-capped definition)."""
    return _solve(g, ntd, p, "bp", threads)


# -- signatures of concrete broadcasts (definition-level, for testing) ------

def bi_signature_of(
    g: WeightedGraph,
    ntd: NiceTreeDecomposition,
    x: int,
    f: Broadcast,
    p: int,
) -> tuple[tuple[int, int], ...]:
    """(s1, s2) per bag vertex for a broadcast supported on the forgotten set."""
    vx = ntd.subtree_vertices(x)
    if not set(f.values) <= vx:
        raise ParameterError("broadcast support must lie in the node's forgotten set")
    sig = []
    for v in ntd.nodes[x].bag:
        row = g.dist_row(v)
        s1, s2 = 0, p
        for u, fu in f.values.items():
            s1 = max(s1, fu - row[u] + 1)
            s2 = min(s2, row[u] - 1)
        sig.append((max(0, s1), max(0, s2)))
    return tuple(sig)


def pack_signature_of(
    g: WeightedGraph,
    ntd: NiceTreeDecomposition,
    x: int,
    f: Broadcast,
    p: int,
) -> tuple[int, ...]:
    """s(v) = max(-p-1, max_u(f(u) - d(u,v))) per bag vertex."""
    vx = ntd.subtree_vertices(x)
    if not set(f.values) <= vx:
        raise ParameterError("broadcast support must lie in the node's forgotten set")
    sig = []
    for v in ntd.nodes[x].bag:
        row = g.dist_row(v)
        s = -p - 1
        for u, fu in f.values.items():
            s = max(s, fu - row[u])
        sig.append(s)
    return tuple(sig)


def encode_bi_signature(sig: tuple[tuple[int, int], ...], p: int) -> int:
    key = 0
    for s1, s2 in sig:
        key = (key * (p + 1) + s1) * (p + 1) + s2
    return key


def encode_pack_signature(sig: tuple[int, ...], p: int) -> int:
    key = 0
    for s in sig:
        key = key * (2 * p + 2) + (s + p + 1)
    return key
