"""Command-line front door.

Subcommands: gen, classify, cycles, build, transform, cuts, verify, cert.
Exit codes: 0 success, 1 a certificate or verification re-check failed,
2 usage error, 3 refused by a size guard.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from itertools import combinations

from .acyclicity import (
    CycleCandidate,
    find_simple_cycle,
    is_alpha_acyclic,
    is_alpha_cycle,
    is_berge_acyclic,
    is_chordless_alpha_cycle,
    is_simple_cycle,
    running_intersection_ordering,
)
from .cuts import (
    check_cg_cut,
    facet_certificate,
    generalized_triangle,
    gtri_aggregation_certificate,
    normalize_triangle_cycle,
    support_hypergraph,
    switching_orbit,
    validity_certificate,
)
from .exactlp import LinearInequality, Polyhedron, SizeLimitExceeded, Var, is_feasible_point
from .fixtures import build as build_fixture
from .fixtures import family_names
from .hypergraph import Hypergraph, completion, is_closed, maximal_edges
from .relaxations import (
    complete_edge_relaxation,
    mccormick,
    mp_vertices,
    rlt_complete_polytope,
    standard_linearization,
)
from .transforms import apply_to_inequality, contract, expand, fix_node, switching_map
from .verify import (
    almostfull_certificate,
    binary_maximum,
    check_berge_tightness,
    check_extension,
)

DEFAULT_VERIFY_FIXTURES = [
    ("triangle", None),
    ("path", 3),
    ("covered-triangle", None),
    ("path-hyper", None),
    ("two-triples", None),
    ("apex-triples", None),
    ("shortcut-hex", None),
    ("chorded-square", None),
    ("almostfull", 3),
    ("almostfull", 4),
    ("almostfull", 5),
    ("complete", 3),
    ("complete", 4),
]


def _read_hypergraph(path: str) -> Hypergraph:
    with open(path) as fh:
        return Hypergraph.from_json(fh.read())


def _write(text: str, path: str | None):
    if path:
        with open(path, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _emit_json(payload, path: str | None):
    _write(json.dumps(payload, indent=2, sort_keys=True) + "\n", path)


def _parse_cycle(spec: str) -> list[tuple[int, ...]]:
    edges = []
    for part in spec.split(";"):
        edges.append(tuple(sorted(int(x) for x in part.split(","))))
    return edges


def _edge_payload(edges) -> list[list[int]]:
    return [list(e) for e in edges]


# ---------------------------------------------------------------------------
# Subcommand handlers.


def _cmd_gen(args) -> int:
    g = build_fixture(args.family, args.param, seed=args.seed)
    _write(g.to_json(), args.output)
    return 0


def _cmd_classify(args) -> int:
    g = _read_hypergraph(args.input)
    rio = running_intersection_ordering(g)
    cyc = find_simple_cycle(g, args.max_len)
    report = {
        "nodes": list(g.nodes),
        "edge_count": len(g.edges),
        "rank": g.rank,
        "maximal_edges": _edge_payload(maximal_edges(g)),
        "alpha_acyclic": rio is not None,
        "berge_acyclic": is_berge_acyclic(g),
        "running_intersection": None
        if rio is None
        else {"order": _edge_payload(rio.order), "witnesses": list(rio.witnesses)},
        "simple_cycle": None if cyc is None else _edge_payload(cyc.edges),
    }
    report["consistent"] = (rio is not None) == (cyc is None)
    _emit_json(report, args.output)
    return 0 if report["consistent"] else 1


def _witnessed_check(g: Hypergraph, cand: CycleCandidate) -> dict:
    """Predicate verdicts plus, on failure, the covering edge witness."""
    out = {
        "edges": _edge_payload(cand.edges),
        "intersections": [sorted(s) for s in cand.intersections],
        "alpha_cycle": is_alpha_cycle(g, cand),
        "simple_cycle": is_simple_cycle(g, cand),
    }
    if not out["simple_cycle"]:
        s = cand.intersections
        witness = None
        for i, j, k in combinations(range(len(cand)), 3):
            union = s[i] | s[j] | s[k]
            for e in g.edges:
                if union <= set(e):
                    witness = {"triple": [i + 1, j + 1, k + 1], "covering_edge": list(e)}
                    break
            if witness:
                break
        out["witness"] = witness
    if out["alpha_cycle"]:
        out["chordless"] = is_chordless_alpha_cycle(g, cand)
    return out


def _cmd_cycles(args) -> int:
    g = _read_hypergraph(args.input)
    if args.candidate:
        cand = CycleCandidate(tuple(_parse_cycle(args.candidate)))
        _emit_json(_witnessed_check(g, cand), args.output)
        return 0
    cyc = find_simple_cycle(g, args.max_len)
    payload = {
        "simple_cycle": None if cyc is None else _edge_payload(cyc.edges),
        "length": None if cyc is None else len(cyc),
        "max_len": args.max_len,
    }
    _emit_json(payload, args.output)
    return 0


def _cmd_build(args) -> int:
    g = _read_hypergraph(args.input)
    if args.relaxation == "mp-vertices":
        lines = []
        pts = mp_vertices(g)
        space = [v for v, _ in pts[0].vector]
        lines.append("vars " + " ".join(v.name for v in space))
        for bp in pts:
            lines.append("point " + " ".join(str(val) for _, val in bp.vector))
        _write("\n".join(lines) + "\n", args.output)
        return 0
    if args.relaxation == "mplp":
        poly = standard_linearization(g)
    elif args.relaxation == "mccormick":
        poly = mccormick(g)
    elif args.relaxation == "cer":
        poly = complete_edge_relaxation(g)
    else:  # rlt
        maxes = maximal_edges(g)
        if len(maxes) != 1:
            raise ValueError("rlt output needs a hypergraph with a single maximal edge")
        poly = rlt_complete_polytope(maxes[0])
    _write(poly.format(), args.output)
    return 0


def _cmd_transform(args) -> int:
    g = _read_hypergraph(args.input)
    op = args.op
    emit_poly = None
    if op[0] == "fix":
        fixing = fix_node(g, int(op[1]))
        out = fixing.hypergraph
        extra = {
            "dropped_nodes": list(fixing.dropped_nodes),
            "eliminate_original": [v.name for v in fixing.eliminate_original],
            "eliminate_extended": [v.name for v in fixing.eliminate_extended],
        }
    elif op[0] == "contract":
        out, pin = contract(g, int(op[1]), int(op[2]))
        extra = {"pin": pin.pins[0].format()}
    elif op[0] == "expand":
        w, k = int(op[1]), int(op[2])
        fresh = [max(g.nodes) + 1 + i for i in range(k)]
        out = expand(g, w, fresh)
        extra = {"cluster": fresh}
    elif op[0] == "switch":
        flipped = [int(x) for x in op[1].split(",")] if op[1] else []
        closed = completion(g)
        amap = switching_map(closed, flipped)
        out = closed
        if args.emit:
            base = complete_edge_relaxation(closed) if args.emit == "cer" else standard_linearization(closed)
            rows = [apply_to_inequality(amap, c) for c in base.constraints]
            emit_poly = Polyhedron(base.space, rows, base.original_vars)
        extra = {"flipped": sorted(flipped)}
    else:
        raise ValueError(f"unknown transform {op[0]!r}")
    if args.emit and emit_poly is None:
        emit_poly = (
            complete_edge_relaxation(out) if args.emit == "cer" else standard_linearization(out)
        )
    payload = {"hypergraph": json.loads(out.to_json()), **extra}
    if emit_poly is not None:
        payload["polyhedron"] = emit_poly.format().splitlines()
    _emit_json(payload, args.output)
    return 0


def _detect_triangle(g: Hypergraph):
    maxes = maximal_edges(g)
    for triple in combinations(maxes, 3):
        cand = CycleCandidate(triple)
        if is_alpha_cycle(g, cand):
            return triple
    return None


def _cmd_cuts(args) -> int:
    g = completion(_read_hypergraph(args.input))
    if args.cycle:
        e1, e2, e3 = _parse_cycle(args.cycle)
    else:
        found = _detect_triangle(g)
        if found is None:
            raise ValueError("no length-3 alpha-cycle found among maximal edges")
        e1, e2, e3 = found
    tc = normalize_triangle_cycle(g, e1, e2, e3)
    gc = support_hypergraph(tc)
    ineqs = generalized_triangle(tc)
    if args.orbit:
        ineqs = switching_orbit(gc, ineqs)
    kinds = args.certify.split(",") if args.certify else []
    bundle = {
        "hypergraph": json.loads(g.to_json()),
        "cycle": _edge_payload(tc.edges),
        "support": json.loads(gc.to_json()),
        "orbit": args.orbit,
        "inequalities": [],
    }
    cer = complete_edge_relaxation(gc) if "cg" in kinds else None
    failures = 0
    for ineq in ineqs:
        entry = {"inequality": ineq.normalized().format()}
        if "validity" in kinds:
            cert = validity_certificate(gc, ineq)
            entry["validity"] = {
                "tight_subsets": [sorted(t) for t in cert.tight_subsets],
                "ok": cert.recheck(),
            }
            failures += 0 if entry["validity"]["ok"] else 1
        if "facet" in kinds:
            cert = facet_certificate(gc, ineq)
            entry["facet"] = {
                "tight_rank": cert.tight_rank,
                "space_dim": cert.space_dim,
                "is_facet": cert.is_facet,
            }
            failures += 0 if cert.is_facet else 1
        if "cg" in kinds:
            res = check_cg_cut(cer, ineq)
            entry["cg"] = {
                "is_cut": res.is_cut,
                "optimum": str(res.optimum),
                "rhs": str(res.inequality.rhs),
            }
            failures += 0 if res.is_cut else 1
        bundle["inequalities"].append(entry)
    if "aggregation" in kinds:
        aggs = []
        for which in (1, 2, 3, 4):
            cert = gtri_aggregation_certificate(tc, which)
            aggs.append(
                {
                    "which": which,
                    "rows": [[list(u), list(e)] for u, e in cert.rows],
                    "aggregate": cert.aggregate.format(),
                    "target": cert.target.normalized().format(),
                    "ok": cert.recheck(),
                }
            )
            failures += 0 if aggs[-1]["ok"] else 1
        bundle["aggregations"] = aggs
    _emit_json(bundle, args.output)
    return 1 if failures else 0


def _auto_mode(g: Hypergraph) -> str:
    from math import comb

    dim = len(g.nodes) + len(g.edges)
    if dim <= 16 and len(g.nodes) <= 6 and comb(2 ** len(g.nodes), dim) <= 2_000_000:
        return "exact"
    return "sampled"


def _cmd_verify(args) -> int:
    if args.fixture:
        requested = [(args.fixture, args.param)]
    else:
        requested = DEFAULT_VERIFY_FIXTURES
    report = []
    exit_code = 0
    for name, param in requested:
        g = build_fixture(name, param, seed=args.seed)
        mode = args.mode if args.mode != "auto" else _auto_mode(g)
        try:
            verdict = check_extension(g, mode, samples=args.samples, seed=args.seed)
        except SizeLimitExceeded as exc:
            report.append({"fixture": name, "param": param, "error": str(exc)})
            exit_code = 3
            continue
        alpha = is_alpha_acyclic(g)
        entry = {
            "fixture": name,
            "param": param,
            "mode": mode,
            "alpha_acyclic": alpha,
            "verdict": verdict.status,
            "reason": verdict.reason,
        }
        if verdict.status == "not-extension":
            entry["objective"] = verdict.objective.format()
            entry["lp_value"] = str(verdict.lp_value)
            entry["ip_value"] = str(verdict.ip_value)
            entry["gap"] = str(verdict.lp_value - verdict.ip_value)
            entry["fractional_point"] = {
                v.name: str(x) for v, x in sorted(verdict.fractional_point.items(), key=lambda t: t[0].sort_key)
            }
        concordant = (verdict.status == "extension") == alpha or verdict.status == "inconclusive"
        entry["concordant"] = concordant
        if not concordant:
            exit_code = 1
        report.append(entry)
    _emit_json({"fixtures": report}, args.output)
    return exit_code


def _cmd_cert(args) -> int:
    """Re-validate a certificate bundle produced by `cuts`."""
    with open(args.bundle) as fh:
        bundle = json.load(fh)
    gc = Hypergraph(bundle["support"]["nodes"], bundle["support"]["edges"])
    cer = None
    failures = []
    for entry in bundle.get("inequalities", []):
        ineq = LinearInequality.parse(entry["inequality"])
        if "validity" in entry:
            try:
                validity_certificate(gc, ineq)
            except ValueError:
                failures.append(("validity", entry["inequality"]))
        if "facet" in entry:
            cert = facet_certificate(gc, ineq)
            if cert.tight_rank != entry["facet"]["tight_rank"] or not cert.is_facet:
                failures.append(("facet", entry["inequality"]))
        if "cg" in entry:
            if cer is None:
                cer = complete_edge_relaxation(gc)
            res = check_cg_cut(cer, ineq)
            if not res.is_cut or str(res.optimum) != entry["cg"]["optimum"]:
                failures.append(("cg", entry["inequality"]))
    for agg in bundle.get("aggregations", []):
        rows = tuple((tuple(u), tuple(e)) for u, e in agg["rows"])
        from .cuts import AggregationCertificate

        cert = AggregationCertificate(
            rows,
            LinearInequality.parse(agg["aggregate"]),
            LinearInequality.parse(agg["target"]),
        )
        if not cert.recheck():
            failures.append(("aggregation", agg["which"]))
    summary = {
        "bundle": args.bundle,
        "checked": len(bundle.get("inequalities", [])) + len(bundle.get("aggregations", [])),
        "failures": [list(f) for f in failures],
    }
    _emit_json(summary, args.output)
    return 1 if failures else 0


# ---------------------------------------------------------------------------


def _build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="mlpoly", description=__doc__)
    sub = p.add_subparsers(dest="command", required=True)

    g = sub.add_parser("gen", help="generate a named hypergraph family as JSON")
    g.add_argument("family", choices=family_names())
    g.add_argument("param", nargs="?", type=int, default=None)
    g.add_argument("--seed", type=int, default=0)
    g.add_argument("-o", "--output")
    g.set_defaults(func=_cmd_gen)

    c = sub.add_parser("classify", help="acyclicity report for a hypergraph file")
    c.add_argument("input")
    c.add_argument("--max-len", type=int, default=8)
    c.add_argument("-o", "--output")
    c.set_defaults(func=_cmd_classify)

    yc = sub.add_parser("cycles", help="find or check cycles")
    yc.add_argument("input")
    yc.add_argument("--max-len", type=int, default=8)
    yc.add_argument("--candidate", help="edge list like '1,2;2,3;1,3' to check instead of searching")
    yc.add_argument("-o", "--output")
    yc.set_defaults(func=_cmd_cycles)

    b = sub.add_parser("build", help="emit a relaxation or the vertex list")
    b.add_argument("input")
    b.add_argument(
        "--relaxation",
        choices=["mplp", "mccormick", "cer", "rlt", "mp-vertices"],
        required=True,
    )
    b.add_argument("-o", "--output")
    b.set_defaults(func=_cmd_build)

    t = sub.add_parser("transform", help="apply a hypergraph surgery")
    t.add_argument("input")
    t.add_argument("op", nargs="+", help="fix V | contract W U | expand W K | switch U1,U2,...")
    t.add_argument("--emit", choices=["cer", "mplp"], help="also emit a relaxation of the result")
    t.add_argument("-o", "--output")
    t.set_defaults(func=_cmd_transform)

    k = sub.add_parser("cuts", help="triangle cuts for a length-3 alpha-cycle")
    k.add_argument("input")
    k.add_argument("--cycle", help="three edges like '1,2,4;2,3,4;1,3,4' (default: auto-detect)")
    k.add_argument("--orbit", action="store_true", help="expand to the full switching orbit")
    k.add_argument("--certify", help="comma list from validity,facet,cg,aggregation")
    k.add_argument("-o", "--output")
    k.set_defaults(func=_cmd_cuts)

    v = sub.add_parser("verify", help="extension checks over the fixture registry")
    v.add_argument("--fixture")
    v.add_argument("--param", type=int, default=None)
    v.add_argument("--mode", choices=["auto", "exact", "sampled"], default="auto")
    v.add_argument("--samples", type=int, default=50)
    v.add_argument("--seed", type=int, default=0)
    v.add_argument("-o", "--output")
    v.set_defaults(func=_cmd_verify)

    r = sub.add_parser("cert", help="re-validate a certificate bundle")
    r.add_argument("bundle")
    r.add_argument("-o", "--output")
    r.set_defaults(func=_cmd_cert)
    return p


def main(argv=None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except SizeLimitExceeded as exc:
        print(f"refused: {exc}", file=sys.stderr)
        return 3
    except AssertionError as exc:
        print(f"verification mismatch: {exc}", file=sys.stderr)
        return 1
    except (ValueError, OSError, KeyError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
