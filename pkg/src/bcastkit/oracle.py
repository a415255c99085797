"""Brute-force ground truth and exhaustive small-graph enumeration.

The oracle's job is to be obviously correct: it enumerates assignments
f: V -> {0..p} vertex by vertex in id order, rejecting a positive value
as soon as it violates the pairwise condition against any earlier
broadcaster (sound because the conditions are pairwise and only tighten
as values are added).
"""

from __future__ import annotations

from itertools import combinations
from typing import Iterator

from . import kernels
from .errors import OracleCapError, ParameterError
from .graph import Broadcast, WeightedGraph

UNWEIGHTED_CAP = 8
WEIGHTED_CAP = 7


def _cap_for(g: WeightedGraph, cap: int | None) -> int:
    if cap is not None:
        return cap
    return UNWEIGHTED_CAP if g.unit_weights else WEIGHTED_CAP


def _dist0(g: WeightedGraph) -> list[list[int]]:
    return [g.dist_row(v)[1:] for v in g.vertices()]


def brute_force_optimum(
    g: WeightedGraph,
    problem: str,
    p: int | None = None,
    cap: int | None = None,
) -> tuple[int, Broadcast]:
    """Exact optimum under the diameter-capped definition.

    Returns the lexicographically smallest witness among the optima.
    """
    if problem not in ("bi", "bp"):
        raise ParameterError(f"unknown problem {problem!r}")
    limit = _cap_for(g, cap)
    if g.n > limit:
        raise OracleCapError(f"n={g.n} exceeds the brute-force cap {limit}")
    if p is None:
        p = g.diam
    if p < 0 or p > g.diam:
        raise ParameterError(f"p={p} out of range [0, diam={g.diam}]")
    dist = _dist0(g)
    kern = kernels.oracle_kernels(g.n, p, g.diam)
    value, vec = kern.best(g.n, p, dist, problem == "bp")
    return value, Broadcast({i + 1: fv for i, fv in enumerate(vec) if fv})


def brute_force_profile(g: WeightedGraph, problem: str, cap: int | None = None) -> list[int]:
    """profile[q] = brute-force optimum at cap q, for every q in 0..diam.

    One enumeration serves all p values; used by the oracle-equivalence
    suites to stay within budget.
    """
    if problem not in ("bi", "bp"):
        raise ParameterError(f"unknown problem {problem!r}")
    limit = _cap_for(g, cap)
    if g.n > limit:
        raise OracleCapError(f"n={g.n} exceeds the brute-force cap {limit}")
    p = g.diam
    dist = _dist0(g)
    kern = kernels.oracle_kernels(g.n, p, g.diam)
    return kern.profile(g.n, p, dist, problem == "bp")


def iter_valid_broadcasts(
    g: WeightedGraph,
    problem: str,
    p: int,
    vertices: tuple[int, ...] | None = None,
) -> Iterator[Broadcast]:
    """All broadcasts supported on ``vertices`` whose natural extension is
    valid (pairwise condition only; values in 0..p), in lexicographic order."""
    if problem not in ("bi", "bp"):
        raise ParameterError(f"unknown problem {problem!r}")
    packing = problem == "bp"
    vs = tuple(sorted(vertices)) if vertices is not None else tuple(g.vertices())
    rows = {v: g.dist_row(v) for v in vs}
    assigned: dict[int, int] = {}

    def rec(i: int) -> Iterator[Broadcast]:
        if i == len(vs):
            yield Broadcast(dict(assigned))
            return
        v = vs[i]
        yield from rec(i + 1)
        row = rows[v]
        lim = p
        for u, fu in assigned.items():
            d = row[u]
            if packing:
                lim = min(lim, d - fu - 1)
            else:
                if fu >= d:
                    lim = 0
                    break
                lim = min(lim, d - 1)
        for val in range(1, lim + 1):
            assigned[v] = val
            yield from rec(i + 1)
            del assigned[v]

    yield from rec(0)


def enumerate_small_graphs(n: int) -> Iterator[WeightedGraph]:
    """All connected labeled graphs on n vertices (n <= 6), ascending edge mask."""
    if not (1 <= n <= 6):
        raise ParameterError(f"n={n} out of range [1, 6]")
    pairs = list(combinations(range(1, n + 1), 2))
    for mask in range(1 << len(pairs)):
        edges = [(u, v, 1) for i, (u, v) in enumerate(pairs) if mask >> i & 1]
        if len(edges) < n - 1:
            continue
        if _connected(n, edges):
            yield WeightedGraph(n, edges)


def _connected(n: int, edges) -> bool:
    parent = list(range(n + 1))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    comps = n
    for u, v, _ in edges:
        ru, rv = find(u), find(v)
        if ru != rv:
            parent[ru] = rv
            comps -= 1
    return comps == 1


def maximum_independent_set_size(g: WeightedGraph) -> int:
    """Exact independence number by subset enumeration (independent of the
    oracle's search; used as a cross-check for the p=1 equivalence)."""
    if g.n > 20:
        raise OracleCapError(f"n={g.n} too large for subset enumeration")
    adj_mask = [0] * g.n
    for u, v, _ in g.edges:
        adj_mask[u - 1] |= 1 << (v - 1)
        adj_mask[v - 1] |= 1 << (u - 1)
    best = 0
    for mask in range(1 << g.n):
        m = mask
        ok = True
        while m:
            i = (m & -m).bit_length() - 1
            if adj_mask[i] & mask:
                ok = False
                break
            m &= m - 1
        if ok:
            best = max(best, mask.bit_count())
    return best
