"""Problem-level wrappers: truncation transforms, win/win decision, approximation.

The truncation constructions replace a high-value broadcaster by several
low-value broadcasters spread along a shortest path from it, trading at
most a factor p/(2p+2) (independence) or p/(2p+1) (packing) of the
value.  They require unit edge weights: the path placement assumes a
vertex at every integer distance up to the path's depth.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .dp import solve_p_bi, solve_p_bp
from .errors import InternalError, ParameterError, TransformError
from .graph import (
    Broadcast,
    WeightedGraph,
    is_broadcast_packing,
    is_independent_broadcast,
)
from .treedecomp import NiceTreeDecomposition


@dataclass(frozen=True)
class ApproxConfig:
    """epsilon in (0, 1/2) and the derived cap p = floor(1 / (2 epsilon))."""

    epsilon: Fraction
    p: int

    @classmethod
    def from_epsilon(cls, epsilon) -> "ApproxConfig":
        try:
            eps = Fraction(epsilon)
        except (ValueError, ZeroDivisionError, TypeError):
            raise ParameterError(f"cannot parse epsilon {epsilon!r}") from None
        if not (0 < eps < Fraction(1, 2)):
            raise ParameterError(f"epsilon must be in (0, 1/2), got {eps}")
        p = math.floor(1 / (2 * eps))
        if p < 1 or Fraction(p, 2 * p + 2) < Fraction(1, 2) - eps:
            raise InternalError(f"derived p={p} breaks the ratio bound for epsilon={eps}")
        return cls(epsilon=eps, p=p)


def canonical_single_broadcast(g: WeightedGraph) -> Broadcast:
    """Value-diam broadcast at the smallest vertex of maximum eccentricity."""
    diam = g.diam
    if diam == 0:
        return Broadcast({})
    v = min(u for u in g.vertices() if g.eccentricity(u) == diam)
    return Broadcast({v: diam})


def decide_value_k(
    g: WeightedGraph,
    k: int,
    problem: str,
    ntd: NiceTreeDecomposition | None = None,
    threads: int = 1,
) -> tuple[bool, Broadcast | None]:
    """Is there a valid broadcast of value >= k?  Win/win on the diameter:
    diam > k yields a truncated single-broadcaster witness; otherwise the
    exact DP at p = diam settles it."""
    if problem not in ("bi", "bp"):
        raise ParameterError(f"unknown problem {problem!r}")
    if k < 1:
        raise ParameterError(f"k must be >= 1 (got {k})")
    if g.diam > k:
        big = canonical_single_broadcast(g)
        v = big.broadcasters[0]
        return True, Broadcast({v: k})
    if ntd is None:
        from .treedecomp import heuristic_decompose, make_nice

        ntd = make_nice(heuristic_decompose(g))
    solve = solve_p_bi if problem == "bi" else solve_p_bp
    value, witness = solve(g, ntd, g.diam, threads=threads)
    if value >= k:
        return True, witness
    return False, None


def _shortest_path_to_depth(g: WeightedGraph, v: int, depth: int) -> list[int]:
    """Deterministic shortest path v = u_0, ..., u_depth (unit weights).

    Endpoint and predecessors are the smallest-id choices.
    """
    row = g.dist_row(v)
    candidates = [u for u in g.vertices() if row[u] == depth]
    if not candidates:
        raise InternalError(f"no vertex at distance {depth} from {v}")
    cur = min(candidates)
    path = [cur]
    while row[cur] > 0:
        cur = min(u for u, _ in g.adj[cur] if row[u] == row[cur] - 1)
        path.append(cur)
    path.reverse()
    return path


def _place(out: dict[int, int], w: int, val: int) -> None:
    if w in out:
        raise InternalError(f"transform placed two values on vertex {w}")
    out[w] = val


def truncate_independent(g: WeightedGraph, f: Broadcast, p: int) -> Broadcast:
    """Independent p-broadcast with (2p+2) * value(out) >= p * value(in).

    Broadcasters with f(v) <= 2p+2 are clipped to min(f(v), p); larger
    ones are replaced along a shortest path of depth
    beta = floor((f(v)+1)/2) = a(p+1)+b by value-p broadcasters at
    offsets k(p+1) for k < a, plus value b at offset a(p+1) when b >= 1.
    """
    if p < 1:
        raise ParameterError(f"p must be >= 1 (got {p})")
    if not g.unit_weights:
        raise TransformError("truncation transforms require unit edge weights")
    if not is_independent_broadcast(g, f, relaxed=True):
        raise TransformError("input is not a valid independent broadcast")
    out: dict[int, int] = {}
    for v in f.broadcasters:
        fv = f.get(v)
        if fv <= 2 * p + 2:
            _place(out, v, min(fv, p))
            continue
        beta = (fv + 1) // 2
        path = _shortest_path_to_depth(g, v, beta)
        a, b = divmod(beta, p + 1)
        for k in range(a):
            _place(out, path[k * (p + 1)], p)
        if b >= 1:
            _place(out, path[a * (p + 1)], b)
    result = Broadcast(out)
    if result.max_value() > p:
        raise InternalError("truncated broadcast exceeds the p-cap")
    if not is_independent_broadcast(g, result, relaxed=True):
        raise InternalError("truncated broadcast is not independent")
    if (2 * p + 2) * result.value < p * f.value:
        raise InternalError("truncation lost more than the guaranteed ratio")
    return result


def truncate_packing(g: WeightedGraph, f: Broadcast, p: int) -> Broadcast:
    """p-broadcast packing with (2p+1) * value(out) >= p * value(in).

    Broadcasters with f(v) <= p are kept; larger ones are replaced along
    a shortest path of depth f(v), writing f(v) - p = a(2p+1) + b: value
    p at offsets k(2p+1) for k in 0..a, plus value ceil(b/2)-1 at offset
    p + a(2p+1) + ceil(b/2) when b >= 3.
    """
    if p < 1:
        raise ParameterError(f"p must be >= 1 (got {p})")
    if not g.unit_weights:
        raise TransformError("truncation transforms require unit edge weights")
    if not is_broadcast_packing(g, f, relaxed=True):
        raise TransformError("input is not a valid broadcast packing")
    bc = f.broadcasters
    if len(bc) == 1 and f.get(bc[0]) > g.eccentricity(bc[0]):
        # relaxed single broadcaster beyond its eccentricity: fall back to
        # the canonical diameter broadcast (same or larger value)
        f = canonical_single_broadcast(g)
    out: dict[int, int] = {}
    for v in f.broadcasters:
        fv = f.get(v)
        if fv <= p:
            _place(out, v, fv)
            continue
        path = _shortest_path_to_depth(g, v, fv)
        a, b = divmod(fv - p, 2 * p + 1)
        for k in range(a + 1):
            _place(out, path[k * (2 * p + 1)], p)
        if b >= 3:
            idx = p + a * (2 * p + 1) + (b + 1) // 2
            if idx > fv:
                raise InternalError(f"extra broadcaster offset {idx} exceeds path depth {fv}")
            _place(out, path[idx], (b + 1) // 2 - 1)
    result = Broadcast(out)
    if result.max_value() > p:
        raise InternalError("truncated broadcast exceeds the p-cap")
    if not is_broadcast_packing(g, result, relaxed=True):
        raise InternalError("truncated broadcast is not a packing")
    if (2 * p + 1) * result.value < p * f.value:
        raise InternalError("truncation lost more than the guaranteed ratio")
    return result


def approx_bi(
    g: WeightedGraph,
    ntd: NiceTreeDecomposition,
    epsilon,
    threads: int = 1,
) -> tuple[int, Broadcast, int]:
    """(1/2 - epsilon)-approximation of Broadcast Independence.

    Solves exactly with the cap p = floor(1/(2 epsilon)) (clipped to the
    diameter, which only helps); returns (value, witness, p).
    """
    config = ApproxConfig.from_epsilon(epsilon)
    p_run = min(config.p, g.diam)
    value, witness = solve_p_bi(g, ntd, p_run, threads=threads)
    return value, witness, config.p
