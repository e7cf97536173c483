"""Command-line interface: ``xspace {graph,motive,sing,amp,polylog,verify}``.

Inputs are JSON (file, ``-`` for stdin, or inline); reports are JSON or text.
Exit codes: 0 ok, 1 verification failure, 2 input error.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import math
import sys
import time
from dataclasses import dataclass, field

from .graphs import (
    Graph,
    GraphError,
    acyclic_orientations,
    graph_laplacian,
    induced_subgraphs,
    is_biconnected,
)
from .intpoly import tate
from .series import ConvergenceError

EXIT_OK, EXIT_FAIL, EXIT_INPUT = 0, 1, 2


class InputError(ValueError):
    pass


@dataclass
class RunReport:
    command: list
    inputs: dict
    results: dict
    tolerances: dict = field(default_factory=dict)
    oracle: dict = field(default_factory=dict)
    wall_time: float = 0.0
    ok: bool = True

    @property
    def inputs_digest(self) -> str:
        blob = json.dumps(self.inputs, sort_keys=True, separators=(",", ":"))
        return hashlib.sha256(blob.encode()).hexdigest()

    def to_dict(self) -> dict:
        return {
            "command": self.command,
            "inputs": self.inputs,
            "inputs_digest": self.inputs_digest,
            "results": self.results,
            "tolerances": self.tolerances,
            "oracle": self.oracle,
            "ok": self.ok,
            "wall_time": round(self.wall_time, 6),
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, sort_keys=True, default=str)

    def to_text(self) -> str:
        lines = [" ".join(self.command)]
        lines += _flatten(self.results)
        if self.oracle:
            lines.append("oracle:")
            lines += ["  " + x for x in _flatten(self.oracle)]
        lines.append(f"ok: {self.ok}  ({self.wall_time:.2f}s)")
        return "\n".join(lines)


def _flatten(d, prefix="") -> list[str]:
    out = []
    if isinstance(d, dict):
        for k, v in d.items():
            if isinstance(v, (dict, list)) and v and not (isinstance(v, list) and all(not isinstance(x, (dict, list)) for x in v)):
                out.append(f"{prefix}{k}:")
                out += _flatten(v, prefix + "  ")
            else:
                out.append(f"{prefix}{k}: {v}")
    elif isinstance(d, list):
        for x in d:
            if isinstance(x, dict):
                sub = _flatten(x, prefix + "  ")
                if sub:
                    sub[0] = prefix + "- " + sub[0][len(prefix) + 2:]
                out += sub
            else:
                out.append(f"{prefix}- {x}")
    return out


# ---------------------------------------------------------------------------
# input helpers


def _read_json(src: str):
    try:
        if src == "-":
            return json.load(sys.stdin)
        if src.lstrip().startswith(("{", "[")):
            return json.loads(src)
        with open(src) as fh:
            return json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise InputError(f"cannot read JSON from {src!r}: {exc}") from exc


PRESETS = {"edge": lambda: Graph.banana(1), "triangle": lambda: Graph.polygon(3), "banana3": lambda: Graph.banana(3)}


def _load_graph(args) -> Graph:
    if args.preset:
        name, _, k = args.preset.partition(":")
        if name == "polygon" and k.isdigit():
            return Graph.polygon(int(k))
        if name == "banana" and k.isdigit():
            return Graph.banana(int(k))
        if name in PRESETS:
            return PRESETS[name]()
        raise InputError(f"unknown preset {args.preset!r}")
    if args.graph is None:
        raise InputError("a graph is required (--graph FILE|-|JSON or --preset NAME)")
    return Graph.from_json(_read_json(args.graph))


def _int_list(text: str, n: int | None = None) -> list[int]:
    try:
        vals = [int(x) for x in text.split(",")]
    except ValueError as exc:
        raise InputError(f"expected comma-separated integers, got {text!r}") from exc
    if n is not None and len(vals) != n:
        raise InputError(f"expected {n} integers, got {text!r}")
    return vals


def _float_list(text: str) -> list[float]:
    try:
        return [float(x) for x in text.split(",")]
    except ValueError as exc:
        raise InputError(f"expected comma-separated numbers, got {text!r}") from exc


# ---------------------------------------------------------------------------
# commands


def cmd_graph(args) -> RunReport:
    g = _load_graph(args)
    inputs = {"graph": g.to_json(), "action": args.action, "mode": args.mode}
    if args.action == "orient":
        if args.mode == "list":
            res = {"orientations": [o.to_json() for o in acyclic_orientations(g)]}
            res["count"] = len(res["orientations"])
        else:
            res = {"count": len(acyclic_orientations(g))}
    elif args.action == "subgraphs":
        subs = [s for s in induced_subgraphs(g) if s.n_edges and is_biconnected(s)]
        res = {"biconnected": [list(s.vertices) for s in subs], "count": len(subs)}
    elif args.action == "nests":
        from .wonderful import enumerate_gnests

        nests = enumerate_gnests(g)
        res = {"nests": [[list(e.vertices) for e in n.elements] for n in nests], "count": len(nests)}
    elif args.action == "laplacian":
        res = {"vertices": list(g.vertices), "laplacian": graph_laplacian(g).tolist()}
    else:
        raise InputError(f"unknown graph action {args.action!r}")
    return RunReport([], inputs, res)


def cmd_motive(args) -> RunReport:
    from .wonderful import motive_class

    g = _load_graph(args)
    try:
        x = tate(args.x_class)
    except ValueError as exc:
        raise InputError(str(exc)) from exc
    if args.dimX < 0:
        raise InputError("--dimX must be nonnegative")
    m = motive_class(g, x, args.dimX)
    return RunReport([], {"graph": g.to_json(), "dimX": args.dimX, "x_class": str(x)},
                     {"class": str(m), "coefficients": list(m.coeffs)})


def cmd_sing(args) -> RunReport:
    from .wonderful import building_set, convergence_report, singularity_order

    g = _load_graph(args)
    D = args.dimension
    if D < 2 or D % 2:
        raise InputError("--dimension must be even and at least 2")
    orders = [{"vertices": list(s.vertices), "edges": s.n_edges, "order": singularity_order(s, D)}
              for s in building_set(g).elements]
    rep = convergence_report(g, D)
    return RunReport([], {"graph": g.to_json(), "D": D},
                     {"singularity_orders": orders, "convergence": rep.to_dict()})


def cmd_amp(args) -> RunReport:
    from . import amplitudes as amp

    if args.kind == "polygon":
        if not args.paths:
            raise InputError("--paths k1,k2 is required")
        k1, k2 = _int_list(args.paths, 2)
        if args.k is not None and args.k != k1 + k2 + 2:
            raise InputError(f"--k {args.k} is inconsistent with paths {k1},{k2} (k = k1 + k2 + 2)")
        r = amp.polygon_two_path_value(k1, k2, normalized=args.normalized)
        inputs = {"kind": "polygon", "k1": k1, "k2": k2, "normalized": args.normalized}
        ok = r.consistent(1e-10)
        return RunReport([], inputs, r.to_dict(), {"exact_vs_quadrature": 1e-10},
                         {"quadrature": r.numeric.value, "exact": float(r.exact), "agree": ok}, ok=ok)
    if args.kind == "banana3":
        r = amp.banana3_amplitude(args.eps)
        ok = r.notes["routes_agree"]
        return RunReport([], {"kind": "banana3", "eps": args.eps}, r.to_dict(), {"eps": args.eps},
                         {"polylog_route": r.notes["polylog_route"], "agree": ok}, ok=ok)
    if args.kind == "star":
        star = amp.make_star(args.case, args.N)
        if args.t:
            t = _float_list(args.t)
        else:
            t = [2.0 if d == "out" else 0.5 for d in star.directions]
        val = amp.star_integrand(args.case, args.r, t, None, args.N)
        res = {
            "case": args.case, "directions": list(star.directions), "alpha": list(star.alpha),
            "epsilon": list(star.epsilon), "alpha0": star.alpha0, "r_power": star.r_power, "value": val,
        }
        return RunReport([], {"kind": "star", "case": args.case, "r": args.r, "t": t, "N": args.N}, res)
    raise InputError(f"unknown amplitude kind {args.kind!r}")


def cmd_polylog(args) -> RunReport:
    from .oracles import brute_restricted_sum
    from .polylog import PolylogSpec, eval_restricted_polylog

    try:
        spec = PolylogSpec.from_json(_read_json(args.spec))
    except (KeyError, TypeError) as exc:
        raise InputError(f"malformed polylog spec: {exc}") from exc
    val = eval_restricted_polylog(spec, args.eps)
    oracle = {}
    ok = True
    if args.oracle:
        ref = brute_restricted_sum(spec, args.nmax)
        diff = abs(complex(val.value) - complex(ref.value))
        if math.isinf(ref.tail_bound):
            # shell sums carry no tail bound on the unit circle
            oracle = {"brute": ref.to_dict(), "difference": diff, "agree": "uncertified: brute tail unbounded"}
        else:
            ok = diff <= val.tail_bound + ref.tail_bound + 1e-14
            oracle = {"brute": ref.to_dict(), "difference": diff, "agree": ok}
    return RunReport([], {"spec": spec.to_json(), "eps": args.eps}, {"value": val.to_dict()},
                     {"eps": args.eps}, oracle, ok=ok)


def cmd_verify(args) -> RunReport:
    from .acceptance import TOL, run_all

    numbers = _int_list(args.criteria) if args.criteria else None
    results = run_all(numbers)
    ok = all(r.passed for r in results)
    return RunReport([], {"criteria": numbers or "all"}, {"criteria": [r.to_dict() for r in results]},
                     dict(TOL), ok=ok)


# ---------------------------------------------------------------------------
# parser


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise InputError(message)


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--format", choices=("json", "text"), default=argparse.SUPPRESS)
    p = _Parser(prog="xspace", description=__doc__.splitlines()[0], parents=[common])
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)
    orig = sub.add_parser
    sub.add_parser = lambda *a, **k: orig(*a, parents=[common], **k)

    def graph_args(q):
        q.add_argument("--graph", help="graph JSON: file path, '-' for stdin, or inline JSON")
        q.add_argument("--preset", help="edge, triangle, banana3, polygon:K or banana:M")

    q = sub.add_parser("graph", help="orientations, building set, nests, Laplacian")
    q.add_argument("action", choices=("orient", "subgraphs", "nests", "laplacian"))
    q.add_argument("mode", nargs="?", default=None, help="count|list for orient, biconnected for subgraphs")
    graph_args(q)
    q.set_defaults(func=cmd_graph)

    q = sub.add_parser("motive", help="class of the wonderful compactification in Z[L]")
    graph_args(q)
    q.add_argument("--dimX", type=int, required=True)
    q.add_argument("--x-class", required=True, help='e.g. "1+L+L^2"')
    q.set_defaults(func=cmd_motive)

    q = sub.add_parser("sing", help="singularity orders and convergence at infinity")
    graph_args(q)
    q.add_argument("--dimension", type=int, default=4)
    q.set_defaults(func=cmd_sing)

    q = sub.add_parser("amp", help="polygon, 3-banana and star amplitudes")
    q.add_argument("kind", choices=("polygon", "banana3", "star"))
    q.add_argument("--k", type=int)
    q.add_argument("--paths", help="k1,k2")
    q.add_argument("--eps", type=float, default=1e-10)
    q.add_argument("--case", default="o0", choices=("o0", "o1", "o2", "o3"))
    q.add_argument("--r", type=float, default=1.0)
    q.add_argument("--t", help="t1,t2,t3")
    q.add_argument("--N", type=int, default=6)
    q.add_argument("--normalized", action="store_true", help="report without the 2 pi power prefactor")
    q.set_defaults(func=cmd_amp)

    q = sub.add_parser("polylog", help="evaluate a restricted polylogarithm")
    q.add_argument("spec", help="PolylogSpec JSON: file, '-' or inline")
    q.add_argument("--eps", type=float, default=1e-12)
    q.add_argument("--oracle", action="store_true", help="also run the brute shell sum")
    q.add_argument("--nmax", type=int, default=200)
    q.set_defaults(func=cmd_polylog)

    q = sub.add_parser("verify", help="run the acceptance criteria")
    q.add_argument("--criteria", help="comma-separated subset, default all")
    q.add_argument("--jobs", type=int, default=1, help="accepted for compatibility; checks run serially")
    q.set_defaults(func=cmd_verify)
    return p


def _emit(payload: str):
    sys.stdout.write(payload + "\n")


def main(argv=None) -> int:
    parser = build_parser()
    argv = sys.argv[1:] if argv is None else list(argv)
    fmt = "text" if "--format=text" in argv or any(a == "--format" and b == "text" for a, b in zip(argv, argv[1:])) else "json"
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INPUT if exc.code else EXIT_OK
    except InputError as exc:
        _emit(json.dumps({"error": {"type": "UsageError", "message": str(exc)}, "command": argv}, sort_keys=True)
              if fmt == "json" else f"error: {exc}")
        return EXIT_INPUT
    if not hasattr(args, "format"):
        args.format = "json"
    t0 = time.perf_counter()
    try:
        if args.command == "graph":
            valid = {"orient": (None, "count", "list"), "subgraphs": (None, "biconnected"),
                     "nests": (None,), "laplacian": (None,)}
            if args.mode not in valid[args.action]:
                raise InputError(f"invalid mode {args.mode!r} for {args.action}")
        report = args.func(args)
    except (InputError, GraphError, ConvergenceError, ValueError) as exc:
        err = {"error": {"type": type(exc).__name__, "message": str(exc)}, "command": argv}
        _emit(json.dumps(err, sort_keys=True) if args.format == "json" else f"error: {exc}")
        return EXIT_INPUT
    report.command = ["xspace"] + argv
    report.wall_time = time.perf_counter() - t0
    _emit(report.to_json() if args.format == "json" else report.to_text())
    return EXIT_OK if report.ok else EXIT_FAIL


if __name__ == "__main__":
    raise SystemExit(main())
