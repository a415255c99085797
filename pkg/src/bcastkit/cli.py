"""Command-line frontend.

Exit codes: 0 success, 1 negative decision / invalid witness, 2 input
error, 3 internal assertion failure.  All output is line-oriented and
deterministic; ``--json`` mirrors the same content as one JSON object.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .errors import BcastError, InternalError, ParameterError
from .graph import (
    format_graph,
    format_witness,
    parse_graph,
    parse_witness,
)
from .dp import solve_p_bi, solve_p_bp
from .oracle import brute_force_optimum
from .reductions import (
    gen_bi_from_wbi,
    gen_wbi_from_clique,
    gen_wbp_from_clique,
    format_meta,
    parse_mcc,
    self_check,
)
from .transforms import approx_bi, decide_value_k
from .treedecomp import format_td, heuristic_decompose, make_nice, parse_td
from .validate import find_violation


def _read(path: str) -> str:
    try:
        return Path(path).read_text()
    except OSError as exc:
        raise ParameterError(f"cannot read {path}: {exc.strerror}") from None


def _load_graph(args):
    return parse_graph(_read(args.graph))


def _load_ntd(args, g):
    if getattr(args, "td", None):
        td = parse_td(_read(args.td), g)
    else:
        td = heuristic_decompose(g)
    return make_nice(td)


def _emit(args, lines: list[str], payload: dict) -> None:
    if args.json:
        print(json.dumps(payload, sort_keys=True))
    else:
        for line in lines:
            print(line)


def _witness_payload(witness) -> dict:
    return {str(v): fv for v, fv in witness}


def _cmd_solve(args) -> int:
    g = _load_graph(args)
    ntd = _load_ntd(args, g)
    p = args.p if args.p is not None else g.diam
    solve = solve_p_bi if args.problem == "bi" else solve_p_bp
    value, witness = solve(g, ntd, p, threads=args.threads)
    if args.witness:
        Path(args.witness).write_text(format_witness(witness))
    _emit(args, [f"value {value}"], {"value": value, "p": p, "witness": _witness_payload(witness)})
    return 0


def _cmd_approx(args) -> int:
    g = _load_graph(args)
    ntd = _load_ntd(args, g)
    value, witness, p = approx_bi(g, ntd, args.epsilon, threads=args.threads)
    Path(args.witness).write_text(format_witness(witness))
    _emit(
        args,
        [f"value {value}", f"p {p}"],
        {"value": value, "p": p, "witness": _witness_payload(witness)},
    )
    return 0


def _cmd_decide(args) -> int:
    g = _load_graph(args)
    ntd = _load_ntd(args, g) if g.diam <= args.k else None
    yes, witness = decide_value_k(g, args.k, args.problem, ntd=ntd, threads=args.threads)
    if yes:
        lines = ["yes"] + format_witness(witness).splitlines()
        _emit(args, lines, {"answer": "yes", "witness": _witness_payload(witness)})
        return 0
    _emit(args, ["no"], {"answer": "no"})
    return 1


def _cmd_validate(args) -> int:
    g = _load_graph(args)
    witness = parse_witness(_read(args.witness), g)
    violation = find_violation(g, witness, args.problem, relaxed=not args.strict)
    if violation is None:
        _emit(args, [f"valid {witness.value}"], {"valid": True, "value": witness.value})
        return 0
    _emit(
        args,
        [f"invalid {violation.describe()}"],
        {"valid": False, "violation": violation.describe()},
    )
    return 1


def _cmd_oracle(args) -> int:
    g = _load_graph(args)
    value, _ = brute_force_optimum(g, args.problem, p=args.p, cap=args.cap)
    _emit(args, [f"value {value}"], {"value": value})
    return 0


def _cmd_decompose(args) -> int:
    g = _load_graph(args)
    td = heuristic_decompose(g)
    text = format_td(td, g.n)
    if args.out:
        Path(args.out).write_text(text)
        _emit(args, [f"width {td.width}"], {"width": td.width, "out": args.out})
    else:
        _emit(args, [text.rstrip("\n")], {"width": td.width, "td": text})
    return 0


def _cmd_gen(args) -> int:
    if args.reduction in ("wbi-clique", "wbp-clique"):
        inst = parse_mcc(_read(args.infile))
        gen = gen_wbi_from_clique if args.reduction == "wbi-clique" else gen_wbp_from_clique
        ri = gen(inst, scale=args.scale)
    else:
        g1 = parse_graph(_read(args.infile))
        witness1 = None
        m1 = args.m1
        if args.witness_in:
            witness1 = parse_witness(_read(args.witness_in), g1)
            if m1 is None:
                m1 = witness1.value
        if m1 is None:
            raise ParameterError("bi-wbi needs --witness-in or --m1 to fix the target M1")
        ri = gen_bi_from_wbi(
            g1, m1, witness1=witness1, scale=args.scale, normalize=args.normalize
        )
    prefix = args.out_prefix
    graph_path = f"{prefix}.gr"
    meta_path = f"{prefix}.meta"
    Path(graph_path).write_text(format_graph(ri.graph))
    Path(meta_path).write_text(format_meta(ri))
    lines = [f"graph {graph_path}"]
    payload: dict = {"graph": graph_path, "meta": meta_path, "M": ri.target,
                     "vertices": ri.graph.n}
    if ri.witness is not None:
        witness_path = f"{prefix}.witness"
        Path(witness_path).write_text(format_witness(ri.witness))
        lines.append(f"witness {witness_path}")
        payload["witness"] = witness_path
    lines.append(f"meta {meta_path}")
    lines.append(f"vertices {ri.graph.n}")
    lines.append(f"M {ri.target}")
    failed = False
    if args.check:
        payload["checks"] = {}
        for res in self_check(ri):
            status = "ok" if res.ok else "FAIL"
            suffix = f" {res.detail}" if res.detail else ""
            lines.append(f"check {res.name} {status}{suffix}")
            payload["checks"][res.name] = res.ok
            failed = failed or not res.ok
    _emit(args, lines, payload)
    return 3 if failed else 0


def _add_common(sp, td=False, threads=False):
    sp.add_argument("--graph", required=True, help="graph file (p bcast format)")
    if td:
        sp.add_argument("--td", help="optional .td file (heuristic decomposition otherwise)")
    if threads:
        sp.add_argument("--threads", type=int, default=1,
                        help="subtree-parallel DP (identical results to 1)")
    sp.add_argument("--json", action="store_true", help="machine-readable output")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="bcast",
        description="Exact and approximate Broadcast Independence / Broadcast Packing solvers",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    sp = sub.add_parser("solve", help="exact optimum via tree-decomposition DP")
    sp.add_argument("--problem", choices=("bi", "bp"), required=True)
    _add_common(sp, td=True, threads=True)
    sp.add_argument("--p", type=int, default=None, help="value cap (default: diameter)")
    sp.add_argument("--witness", help="write the optimal broadcast here")
    sp.set_defaults(func=_cmd_solve)

    sp = sub.add_parser("approx", help="(1/2 - eps)-approximation of broadcast independence")
    _add_common(sp, td=True, threads=True)
    sp.add_argument("--epsilon", required=True, help="rational in (0, 1/2), e.g. 1/4")
    sp.add_argument("--witness", required=True, help="write the broadcast here")
    sp.set_defaults(func=_cmd_approx)

    sp = sub.add_parser("decide", help="is there a valid broadcast of value >= k?")
    sp.add_argument("--problem", choices=("bi", "bp"), required=True)
    _add_common(sp, td=True, threads=True)
    sp.add_argument("--k", type=int, required=True)
    sp.set_defaults(func=_cmd_decide)

    sp = sub.add_parser("validate", help="check a witness file against a graph")
    sp.add_argument("--problem", choices=("bi", "bp"), required=True)
    _add_common(sp)
    sp.add_argument("--witness", required=True)
    sp.add_argument("--strict", action="store_true",
                    help="per-vertex eccentricity caps instead of the diameter cap")
    sp.set_defaults(func=_cmd_validate)

    sp = sub.add_parser("oracle", help="brute-force exact optimum (small graphs)")
    sp.add_argument("--problem", choices=("bi", "bp"), required=True)
    _add_common(sp)
    sp.add_argument("--p", type=int, default=None)
    sp.add_argument("--cap", type=int, default=None, help="override the size cap")
    sp.set_defaults(func=_cmd_oracle)

    sp = sub.add_parser("decompose", help="min-fill heuristic tree decomposition")
    _add_common(sp)
    sp.add_argument("--out", help="write .td here (default: print to stdout)")
    sp.set_defaults(func=_cmd_decompose)

    sp = sub.add_parser("gen", help="hardness-instance generators with planted witnesses")
    sp.add_argument("--reduction", choices=("wbi-clique", "bi-wbi", "wbp-clique"),
                    required=True)
    sp.add_argument("--in", dest="infile", required=True,
                    help="mcc file (clique reductions) or graph file (bi-wbi)")
    sp.add_argument("--out-prefix", required=True)
    sp.add_argument("--scale", type=float, default=None,
                    help="shrink gadget multiplicities (correctness lemmas no longer apply)")
    sp.add_argument("--witness-in", help="bi-wbi: independent broadcast of the input graph")
    sp.add_argument("--m1", type=int, default=None, help="bi-wbi: target value of the input")
    sp.add_argument("--normalize", action="store_true",
                    help="bi-wbi: drop edges heavier than the diameter instead of failing")
    sp.add_argument("--check", action="store_true", help="run structural self-checks")
    sp.add_argument("--json", action="store_true")
    sp.set_defaults(func=_cmd_gen)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        return args.func(args)
    except InternalError as exc:
        print(f"error internal {type(exc).__name__}: {exc}", file=sys.stderr)
        return 3
    except BcastError as exc:
        print(f"error input {type(exc).__name__}: {exc}", file=sys.stderr)
        return 2
    except AssertionError as exc:
        print(f"error internal AssertionError: {exc}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
