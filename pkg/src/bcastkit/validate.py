"""Witness validation that scales to the generated hardness instances.

For small inputs a lexicographic pair scan reports the first violated
constraint.  For large instances a single multi-source Dijkstra keeping
the two best labels from distinct broadcasters decides both pairwise
conditions exactly, without all-pairs distances:

* packing is violated iff some vertex w has best1(w) + best2(w) <= 0,
  where labels start at -f(u) on each broadcaster u (every u-v shortest
  path has such a witness vertex w);
* independence is violated iff some broadcaster v has a distinct-source
  label <= 0 at v itself, i.e. d(u,v) <= f(u) for some other u.

Under the diameter-capped definition with >= 2 broadcasters the value
ceiling is implied by the pairwise condition (f(u) < d(u,v) <= diam),
so no eccentricities are needed on the fast path.
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass

from .errors import ParameterError
from .graph import Broadcast, WeightedGraph

_SMALL_N = 1024
_SMALL_B = 64


@dataclass(frozen=True)
class Violation:
    kind: str  # "pair" or "cap"
    u: int
    v: int | None
    dist: int | None
    f_u: int
    f_v: int | None
    problem: str
    limit: int

    def describe(self) -> str:
        if self.kind == "cap":
            return f"cap {self.u}: {self.f_u} > {self.limit}"
        if self.problem == "bp":
            rhs = f"{self.f_u}+{self.f_v}"
        else:
            rhs = f"max({self.f_u},{self.f_v})"
        return f"pair {self.u} {self.v}: {self.dist} <= {rhs}"


def find_violation(
    g: WeightedGraph,
    f: Broadcast,
    problem: str,
    relaxed: bool = True,
) -> Violation | None:
    """None if the broadcast is valid for ``problem``; else one violation.

    Small instances report the lexicographically first violated pair;
    large relaxed instances report a deterministic violating pair found
    by the two-label sweep.
    """
    if problem not in ("bi", "bp"):
        raise ParameterError(f"unknown problem {problem!r}")
    for v in f.values:
        g.check_vertex(v)
    bc = f.broadcasters
    if not bc:
        return None
    if len(bc) == 1:
        return _cap_violation_single(g, f, bc[0], relaxed)
    if relaxed and (g.n > _SMALL_N or len(bc) > _SMALL_B):
        return _two_label_scan(g, f, problem)
    return _pair_scan(g, f, problem, relaxed)


def _cap_violation_single(g, f, v, relaxed) -> Violation | None:
    fv = f.get(v)
    if fv <= g.eccentricity(v):
        return None
    if relaxed and fv <= g.diam:
        return None
    limit = g.diam if relaxed else g.eccentricity(v)
    return Violation("cap", v, None, None, fv, None, "-", limit)


def _pair_scan(g, f, problem, relaxed) -> Violation | None:
    bc = f.broadcasters
    for v in bc:
        fv = f.get(v)
        limit = g.diam if relaxed else g.eccentricity(v)
        if fv > limit:
            return Violation("cap", v, None, None, fv, None, "-", limit)
    for i, u in enumerate(bc):
        row = g.dist_row(u)
        fu = f.get(u)
        for v in bc[i + 1 :]:
            fv = f.get(v)
            d = row[v]
            bound = fu + fv if problem == "bp" else max(fu, fv)
            if d <= bound:
                return Violation("pair", u, v, d, fu, fv, problem, bound)
    return None


def _two_label_scan(g, f, problem) -> Violation | None:
    n = g.n
    adj = g.adj
    offset = f.max_value()
    INF = None
    best1 = [INF] * (n + 1)
    src1 = [0] * (n + 1)
    best2 = [INF] * (n + 1)
    src2 = [0] * (n + 1)
    heap = [(offset - fv, v, v) for v, fv in sorted(f.values.items())]
    heapq.heapify(heap)
    while heap:
        lab, s, v = heapq.heappop(heap)
        if best1[v] is None:
            best1[v], src1[v] = lab, s
        elif s != src1[v] and best2[v] is None:
            best2[v], src2[v] = lab, s
        else:
            continue
        for u, w in adj[v]:
            if best2[u] is None:
                heapq.heappush(heap, (lab + w, s, u))
    if problem == "bi":
        for v in f.broadcasters:
            if src1[v] != v and best1[v] is not None:
                lab, s = best1[v], src1[v]
            elif best2[v] is not None:
                lab, s = best2[v], src2[v]
            else:
                continue
            # lab = offset - f(s) + d(s, v)
            if lab - offset <= 0:
                d = lab - offset + f.get(s)
                a, b = min(s, v), max(s, v)
                fa, fb = f.get(a), f.get(b)
                return Violation("pair", a, b, d, fa, fb, "bi", max(fa, fb))
        return None
    for v in range(1, n + 1):
        if best1[v] is not None and best2[v] is not None:
            if (best1[v] - offset) + (best2[v] - offset) <= 0:
                u1, u2 = src1[v], src2[v]
                a, b = min(u1, u2), max(u1, u2)
                d = g.dist(a, b)
                fa, fb = f.get(a), f.get(b)
                return Violation("pair", a, b, d, fa, fb, "bp", fa + fb)
    return None
