"""Hardness-instance generators with planted witnesses and self-checks.

Three constructions from multicolored clique (or from a weighted
instance), each emitting a graph, a target value M, vertex role labels,
and, when a clique/witness is planted, a broadcast that is valid for
the target problem with value exactly M.

Generated at full constants the graphs reach ~10^5 vertices, so the
self-checks avoid all-pairs work: witnesses are validated by the
two-label sweep in :mod:`validate` and diameter bounds are certified
through the hub vertex ``s`` (every vertex lies within ecc(s) of s, so
diam <= 2 ecc(s)).

``scale`` shrinks the pendant-gadget multiplicities for smoke tests;
the construction's correctness lemmas only hold at full constants and
scaled instances are flagged in their metadata.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations

from .errors import GraphFormatError, ReductionInputError
from .graph import Broadcast, WeightedGraph
from .validate import find_violation

_EXACT_DIAMETER_N = 2048


@dataclass(frozen=True)
class CliqueInstance:
    """k color classes of n vertices each; edges only between classes."""

    k: int
    n: int
    edges: tuple[tuple[int, int, int, int], ...]  # (i, a, j, b) with i < j
    planted: tuple[int, ...] | None = None

    def __post_init__(self):
        if self.k < 2:
            raise ReductionInputError(f"need k >= 2 color classes (got {self.k})")
        if self.n < 2 or self.n % 2 != 0:
            raise ReductionInputError(
                f"class size n must be even and >= 2 (got {self.n}); pad with a dummy vertex"
            )
        seen = set()
        for i, a, j, b in self.edges:
            if i == j:
                raise ReductionInputError(
                    f"edge inside class {i}: classes must stay independent"
                )
            if not (1 <= i < j <= self.k and 1 <= a <= self.n and 1 <= b <= self.n):
                raise ReductionInputError(f"edge ({i},{a},{j},{b}) out of range")
            if (i, a, j, b) in seen:
                raise ReductionInputError(f"duplicate edge ({i},{a},{j},{b})")
            seen.add((i, a, j, b))
        if self.planted is not None:
            if len(self.planted) != self.k:
                raise ReductionInputError("planted clique needs one vertex per class")
            if not all(1 <= m <= self.n for m in self.planted):
                raise ReductionInputError("planted clique vertex out of range")
            for i in range(1, self.k + 1):
                for j in range(i + 1, self.k + 1):
                    e = (i, self.planted[i - 1], j, self.planted[j - 1])
                    if e not in seen:
                        raise ReductionInputError(
                            f"planted clique is not a clique: missing edge {e}"
                        )

    def has_edge(self, i: int, a: int, j: int, b: int) -> bool:
        return (i, a, j, b) in set(self.edges)


def parse_mcc(text: str) -> CliqueInstance:
    """Parse 'p mcc <k> <n>' / 'e <i> <a> <j> <b>' / optional 'w <m_1> ... <m_k>'."""
    k = n = None
    edges: list[tuple[int, int, int, int]] = []
    planted = None
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("c"):
            continue
        parts = line.split()
        if parts[0] == "p":
            if k is not None:
                raise ReductionInputError(f"line {lineno}: repeated header")
            if len(parts) != 4 or parts[1] != "mcc":
                raise ReductionInputError(f"line {lineno}: expected 'p mcc <k> <n>'")
            k, n = int(parts[2]), int(parts[3])
        elif parts[0] == "e":
            if len(parts) != 5:
                raise ReductionInputError(f"line {lineno}: expected 'e <i> <a> <j> <b>'")
            i, a, j, b = (int(t) for t in parts[1:])
            if i > j:
                i, a, j, b = j, b, i, a
            edges.append((i, a, j, b))
        elif parts[0] == "w":
            planted = tuple(int(t) for t in parts[1:])
        else:
            raise ReductionInputError(f"line {lineno}: unrecognized line {line!r}")
    if k is None:
        raise ReductionInputError("missing 'p mcc' header")
    return CliqueInstance(k=k, n=n, edges=tuple(sorted(set(edges))), planted=planted)


@dataclass
class ReductionInstance:
    kind: str  # wbi-clique | bi-wbi | wbp-clique
    problem: str  # bi | bp
    graph: WeightedGraph
    target: int
    witness: Broadcast | None
    roles: dict[int, str]
    constants: dict[str, int]
    scaled: bool = False
    source_graph: WeightedGraph | None = None  # bi-wbi input, for self-checks

    def vertices_by_role(self, prefix: str) -> list[int]:
        return sorted(v for v, r in self.roles.items() if r == prefix or r.startswith(prefix + " "))


class _Builder:
    def __init__(self):
        self.count = 0
        self.roles: dict[int, str] = {}
        self.edges: list[tuple[int, int, int]] = []

    def vertex(self, role: str) -> int:
        self.count += 1
        self.roles[self.count] = role
        return self.count

    def edge(self, u: int, v: int, w: int) -> None:
        self.edges.append((u, v, w))

    def path(self, u: int, v: int, length: int, role: str) -> list[int]:
        """Unit path of ``length`` edges from u to v; returns internal vertices."""
        inner = [self.vertex(f"{role} {i}") for i in range(1, length)]
        chain = [u, *inner, v]
        for a, b in zip(chain, chain[1:]):
            self.edge(a, b, 1)
        return inner


def _scaled(value: int, scale: float | None, minimum: int, even: bool = False) -> int:
    if scale is None:
        return value
    if not (0 < scale <= 1):
        raise ReductionInputError(f"scale must be in (0, 1] (got {scale})")
    out = int(value * scale)
    if even:
        out -= out % 2
    return max(minimum, out)


def gen_wbi_from_clique(inst: CliqueInstance, scale: float | None = None) -> ReductionInstance:
    """Weighted Broadcast Independence instance from multicolored clique.

    Constants: b = 6 n^3 k^2, a = 13 k^2 n^3 b, alpha = b + n + 2,
    M = a(2 alpha - 1) + (k + k(k-1)/2)(2b + 2n + 1).  All weights even.
    """
    k, n = inst.k, inst.n
    b = _scaled(6 * n**3 * k**2, scale, minimum=2, even=True)
    a = _scaled(13 * k**2 * n**3 * b, scale, minimum=2)
    alpha = b + n + 2
    bld = _Builder()
    cls = {(i, j): bld.vertex(f"cls {i} {j}") for i in range(1, k + 1) for j in range(1, n + 1)}
    left = {i: bld.vertex(f"l {i}") for i in range(1, k + 1)}
    right = {i: bld.vertex(f"r {i}") for i in range(1, k + 1)}
    for i in range(1, k + 1):
        for j in range(1, n + 1):
            bld.edge(left[i], cls[(i, j)], 2 * j)
            bld.edge(cls[(i, j)], right[i], 2 * n + 2 - 2 * j)
    cpair = {
        (i, j): bld.vertex(f"c {i} {j}")
        for i in range(1, k + 1)
        for j in range(i + 1, k + 1)
    }
    vedge: dict[tuple[int, int, int, int], int] = {}
    for i, mi, j, mj in inst.edges:
        ve = bld.vertex(f"edge {i} {mi} {j} {mj}")
        vedge[(i, mi, j, mj)] = ve
        bld.edge(ve, cpair[(i, j)], n)
        bld.edge(ve, left[i], 2 * b + 2 * n + 2 - 2 * mi)
        bld.edge(ve, right[i], 2 * b + 2 * mi)
        bld.edge(ve, left[j], 2 * b + 2 * n + 2 - 2 * mj)
        bld.edge(ve, right[j], 2 * b + 2 * mj)
    s = bld.vertex("s")
    forbid = [bld.vertex(f"f {x}") for x in range(1, a + 1)]
    for fx in forbid:
        bld.edge(fx, s, alpha)
    for c in cpair.values():
        bld.edge(c, s, alpha - 2)
    for i in range(1, k + 1):
        bld.edge(left[i], s, alpha - 2)
        bld.edge(right[i], s, alpha - 2)
    m_target = a * (2 * alpha - 1) + (k + k * (k - 1) // 2) * (2 * b + 2 * n + 1)
    witness = None
    if inst.planted is not None:
        values = {fx: 2 * alpha - 1 for fx in forbid}
        for i, m in enumerate(inst.planted, start=1):
            values[cls[(i, m)]] = 2 * b + 2 * n + 1
        for i in range(1, k + 1):
            for j in range(i + 1, k + 1):
                e = (i, inst.planted[i - 1], j, inst.planted[j - 1])
                values[vedge[e]] = 2 * b + 2 * n + 1
        witness = Broadcast(values)
    return ReductionInstance(
        kind="wbi-clique",
        problem="bi",
        graph=WeightedGraph(bld.count, bld.edges),
        target=m_target,
        witness=witness,
        roles=bld.roles,
        constants={"k": k, "n": n, "b": b, "a": a, "alpha": alpha, "M": m_target},
        scaled=scale is not None,
    )


def gen_wbp_from_clique(inst: CliqueInstance, scale: float | None = None) -> ReductionInstance:
    """Weighted Broadcast Packing instance from multicolored clique.

    Constants: b = 5 k^2 n^3, a = 11 k^2 n^3 b,
    M = a + 1 + (k + k(k-1)/2)(b + n).  The hub s is universal.
    """
    k, n = inst.k, inst.n
    b = _scaled(5 * k**2 * n**3, scale, minimum=2)
    a = _scaled(11 * k**2 * n**3 * b, scale, minimum=2)
    bld = _Builder()
    cls = {(i, j): bld.vertex(f"cls {i} {j}") for i in range(1, k + 1) for j in range(1, n + 1)}
    left = {i: bld.vertex(f"l {i}") for i in range(1, k + 1)}
    right = {i: bld.vertex(f"r {i}") for i in range(1, k + 1)}
    for i in range(1, k + 1):
        for j in range(1, n + 1):
            bld.edge(left[i], cls[(i, j)], j + 1)
            bld.edge(cls[(i, j)], right[i], n + 2 - j)
    cpair = {
        (i, j): bld.vertex(f"c {i} {j}")
        for i in range(1, k + 1)
        for j in range(i + 1, k + 1)
    }
    vedge: dict[tuple[int, int, int, int], int] = {}
    for i, mi, j, mj in inst.edges:
        ve = bld.vertex(f"edge {i} {mi} {j} {mj}")
        vedge[(i, mi, j, mj)] = ve
        bld.edge(ve, cpair[(i, j)], n // 2)
        bld.edge(ve, left[i], 2 * b + 2 * n - mi)
        bld.edge(ve, right[i], 2 * b + n + mi - 1)
        bld.edge(ve, left[j], 2 * b + 2 * n - mj)
        bld.edge(ve, right[j], 2 * b + n + mj - 1)
    s = bld.vertex("s")
    forbid = [bld.vertex(f"f {x}") for x in range(1, a + 1)]
    for fx in forbid:
        bld.edge(fx, s, 2)
    for i in range(1, k + 1):
        bld.edge(s, left[i], b + n)
        bld.edge(s, right[i], b + n)
        for j in range(1, n + 1):
            bld.edge(s, cls[(i, j)], b + n + 1)
    for c in cpair.values():
        bld.edge(s, c, b + n - 1)
    for ve in vedge.values():
        bld.edge(s, ve, b + n + 1)
    m_target = a + 1 + (k + k * (k - 1) // 2) * (b + n)
    witness = None
    if inst.planted is not None:
        values = {forbid[0]: 2}
        for fx in forbid[1:]:
            values[fx] = 1
        for i, m in enumerate(inst.planted, start=1):
            values[cls[(i, m)]] = b + n
        for i in range(1, k + 1):
            for j in range(i + 1, k + 1):
                e = (i, inst.planted[i - 1], j, inst.planted[j - 1])
                values[vedge[e]] = b + n
        witness = Broadcast(values)
    return ReductionInstance(
        kind="wbp-clique",
        problem="bp",
        graph=WeightedGraph(bld.count, bld.edges),
        target=m_target,
        witness=witness,
        roles=bld.roles,
        constants={"k": k, "n": n, "b": b, "a": a, "M": m_target},
        scaled=scale is not None,
    )


def gen_bi_from_wbi(
    g1: WeightedGraph,
    m1: int,
    witness1: Broadcast | None = None,
    scale: float | None = None,
    normalize: bool = False,
) -> ReductionInstance:
    """Unweighted Broadcast Independence instance from a weighted one.

    Every edge becomes a unit path of its weight; a hub s reaches each
    path's midpoint through a spoke of length (diam - w)/2, and carries
    a = 3 n^2 diam^2 pendant paths of length diam/2.  Distances between
    original vertices (and the diameter) are preserved.
    """
    if g1.n < 2:
        raise ReductionInputError("input graph needs at least 2 vertices")
    for u, v, w in g1.edges:
        if w % 2 != 0:
            raise ReductionInputError(f"edge ({u}, {v}) has odd weight {w}")
    diam1 = g1.diam
    edges1 = list(g1.edges)
    long_edges = [(u, v, w) for u, v, w in edges1 if w > diam1]
    if long_edges:
        if not normalize:
            u, v, w = long_edges[0]
            raise ReductionInputError(
                f"edge ({u}, {v}) has weight {w} > diam {diam1}; rerun with normalization"
            )
        edges1 = [(u, v, w) for u, v, w in edges1 if w <= diam1]
    for u, v, w in edges1:
        if w == diam1:
            raise ReductionInputError(
                f"edge ({u}, {v}) has weight equal to the diameter {diam1}: "
                "its hub spoke would degenerate"
            )
    if m1 <= diam1:
        raise ReductionInputError(f"target M1={m1} must exceed the diameter {diam1}")
    if witness1 is not None:
        bad = find_violation(g1, witness1, "bi", relaxed=True)
        if bad is not None:
            raise ReductionInputError(f"input witness is not independent: {bad.describe()}")
        if witness1.value != m1:
            raise ReductionInputError(
                f"input witness value {witness1.value} != M1 {m1}"
            )
    a = _scaled(3 * g1.n**2 * diam1**2, scale, minimum=1)
    bld = _Builder()
    for v in g1.vertices():
        bld.vertex(f"orig {v}")
    s = bld.vertex("s")
    forbid = [bld.vertex(f"f {x}") for x in range(1, a + 1)]
    for x, fx in enumerate(forbid, start=1):
        bld.path(fx, s, diam1 // 2, f"fp {x}")
    for u, v, w in sorted(edges1):
        inner = bld.path(u, v, w, f"pe {u} {v}")
        midpoint = inner[w // 2 - 1] if w > 1 else None
        if midpoint is None:
            raise ReductionInputError(f"edge ({u}, {v}) has weight {w} < 2")
        bld.path(s, midpoint, (diam1 - w) // 2, f"qe {u} {v}")
    m2 = a * (diam1 - 1) + m1
    witness2 = None
    if witness1 is not None:
        values = dict(witness1.values)
        for fx in forbid:
            values[fx] = diam1 - 1
        witness2 = Broadcast(values)
    return ReductionInstance(
        kind="bi-wbi",
        problem="bi",
        graph=WeightedGraph(bld.count, bld.edges),
        target=m2,
        witness=witness2,
        roles=bld.roles,
        constants={"n1": g1.n, "diam1": diam1, "a": a, "M1": m1, "M": m2},
        scaled=scale is not None,
        source_graph=g1,
    )


# -- structural self-checks --------------------------------------------------

@dataclass(frozen=True)
class CheckResult:
    name: str
    ok: bool
    detail: str = ""


def _hub(ri: ReductionInstance) -> int:
    (s,) = ri.vertices_by_role("s")
    return s


def _check_witness(ri: ReductionInstance) -> list[CheckResult]:
    if ri.witness is None:
        return [CheckResult("witness", True, "no planted witness")]
    out = []
    bad = find_violation(ri.graph, ri.witness, ri.problem, relaxed=True)
    out.append(
        CheckResult("witness-valid", bad is None, bad.describe() if bad else "")
    )
    out.append(
        CheckResult(
            "witness-value",
            ri.witness.value == ri.target,
            f"value {ri.witness.value} vs M {ri.target}",
        )
    )
    return out


def _check_diameter_bound(ri: ReductionInstance, bound: int) -> CheckResult:
    g = ri.graph
    if g.n <= _EXACT_DIAMETER_N:
        diam = g.diam
        return CheckResult("diameter-bound", diam <= bound, f"diam {diam} <= {bound}")
    ecc_s = g.eccentricity(_hub(ri))
    # every vertex is within ecc(s) of s, so diam <= 2 ecc(s)
    return CheckResult(
        "diameter-bound", 2 * ecc_s <= bound, f"2*ecc(s) {2 * ecc_s} <= {bound}"
    )


def _check_vertex_cover(ri: ReductionInstance) -> CheckResult:
    cover = set(ri.vertices_by_role("l")) | set(ri.vertices_by_role("r"))
    cover |= set(ri.vertices_by_role("c"))
    cover.add(_hub(ri))
    uncovered = [(u, v) for u, v, _ in ri.graph.edges if u not in cover and v not in cover]
    return CheckResult(
        "vertex-cover",
        not uncovered,
        f"size {len(cover)}" if not uncovered else f"edge {uncovered[0]} uncovered",
    )


def _check_even_weights(ri: ReductionInstance) -> CheckResult:
    odd = [(u, v, w) for u, v, w in ri.graph.edges if w % 2 != 0]
    return CheckResult(
        "weights-even", not odd, "" if not odd else f"odd edge {odd[0]}"
    )


def _min_vertex_cover(g: WeightedGraph) -> set[int]:
    if g.n <= 20:
        pairs = [(u, v) for u, v, _ in g.edges]
        for size in range(g.n + 1):
            for cand in combinations(range(1, g.n + 1), size):
                cset = set(cand)
                if all(u in cset or v in cset for u, v in pairs):
                    return cset
    # maximal-matching 2-approximation; any vertex cover certifies the claim
    cover: set[int] = set()
    for u, v, _ in g.edges:
        if u not in cover and v not in cover:
            cover.add(u)
            cover.add(v)
    return cover


def _check_forest_after_removal(ri: ReductionInstance) -> CheckResult:
    g1 = ri.source_graph
    cover1 = _min_vertex_cover(g1)
    removed = {v for v, r in ri.roles.items() if r.startswith("orig ") and int(r.split()[1]) in cover1}
    removed.add(_hub(ri))
    parent = list(range(ri.graph.n + 1))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for u, v, _ in ri.graph.edges:
        if u in removed or v in removed:
            continue
        ru, rv = find(u), find(v)
        if ru == rv:
            return CheckResult(
                "forest-after-removal", False, f"cycle through edge ({u}, {v})"
            )
        parent[ru] = rv
    return CheckResult(
        "forest-after-removal", True, f"removed vertex cover of size {len(cover1)} plus s"
    )


def _check_distances_preserved(ri: ReductionInstance) -> list[CheckResult]:
    g1 = ri.source_graph
    g2 = ri.graph
    orig = {int(r.split()[1]): v for v, r in ri.roles.items() if r.startswith("orig ")}
    diam1 = ri.constants["diam1"]
    for u in g1.vertices():
        row2 = g2.dist_row(orig[u])
        row1 = g1.dist_row(u)
        for v in g1.vertices():
            if row2[orig[v]] != row1[v]:
                return [
                    CheckResult(
                        "distance-preservation",
                        False,
                        f"d({u},{v}): {row1[v]} became {row2[orig[v]]}",
                    )
                ]
    ecc_s = g2.eccentricity(_hub(ri))
    diam_ok = ecc_s == diam1 // 2
    return [
        CheckResult("distance-preservation", True, f"{g1.n} sources compared"),
        CheckResult(
            "diameter-preserved",
            diam_ok,
            f"ecc(s) {ecc_s} == diam1/2 {diam1 // 2}; originals realize {diam1}",
        ),
    ]


def self_check(ri: ReductionInstance) -> list[CheckResult]:
    """Structural certificates for a generated instance (criterion-grade)."""
    checks = _check_witness(ri)
    consts = ri.constants
    if ri.kind == "wbi-clique":
        checks.append(_check_even_weights(ri))
        checks.append(
            _check_diameter_bound(ri, 2 * consts["b"] + 4 * consts["n"] + 2)
        )
        checks.append(_check_vertex_cover(ri))
    elif ri.kind == "wbp-clique":
        checks.append(
            _check_diameter_bound(ri, 2 * consts["b"] + 2 * consts["n"] + 2)
        )
        checks.append(_check_vertex_cover(ri))
    elif ri.kind == "bi-wbi":
        checks.extend(_check_distances_preserved(ri))
        checks.append(_check_forest_after_removal(ri))
    return checks


# -- meta sidecar format ------------------------------------------------------

def format_meta(ri: ReductionInstance) -> str:
    lines = [f"p meta {ri.graph.n}"]
    lines.append(f"k kind {ri.kind}")
    lines.append(f"k problem {ri.problem}")
    lines.append(f"k scaled {1 if ri.scaled else 0}")
    for name in sorted(ri.constants):
        lines.append(f"k {name} {ri.constants[name]}")
    for v in sorted(ri.roles):
        lines.append(f"r {v} {ri.roles[v]}")
    return "\n".join(lines) + "\n"


def parse_meta(text: str) -> tuple[dict[str, str], dict[int, str]]:
    constants: dict[str, str] = {}
    roles: dict[int, str] = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("c") or line.startswith("p "):
            continue
        parts = line.split(maxsplit=2)
        if parts[0] == "k" and len(parts) == 3:
            constants[parts[1]] = parts[2]
        elif parts[0] == "r" and len(parts) == 3:
            roles[int(parts[1])] = parts[2]
        else:
            raise GraphFormatError(f"meta line {lineno}: unrecognized line {line!r}")
    return constants, roles
