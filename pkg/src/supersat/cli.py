"""Command line front end: construct graphs, count copies, check patterns,
and run verification suites, with JSON reports throughout.

Exit codes: 0 success or verified, 1 verification failure, 2 usage error,
3 resource cap exceeded. Counts are serialized as decimal strings so no
reader has to trust 64-bit integers.
"""
from __future__ import annotations

import argparse
import hashlib
import json
import sys
import time
from dataclasses import dataclass, field

from . import __version__
from .constructions import (
    StarProfile,
    complete,
    counterexample_pattern,
    cycle,
    extremal_host,
    extremal_host_with_edge,
    independent,
    kneser,
    matching,
    path,
    star,
    star_cluster_pattern,
    star_planted_host,
    starred_host,
    trimmed_starred_host,
    turan,
)
from .counting import count_report, engine_info
from .criticality import (
    critical_size,
    critical_subsets,
    is_color_k_critical,
    stable_threshold,
    unstable_threshold,
)
from .embeddings import TYPE_CAP, admissibility_report
from .formats import from_graph6, from_json, to_dot, to_graph6, to_json
from .formulas import (
    SURPLUS_CAP,
    verify_counterexample,
    verify_part_window,
    verify_petersen,
    verify_surplus,
)
from .graphs import CapExceeded, Graph, chromatic_number
from .suites import run_suite, summary_table


@dataclass
class RunManifest:
    """What a run consumed and produced, for reproducibility records."""

    command: str
    argv: list[str]
    version: str = __version__
    inputs: dict[str, str] = field(default_factory=dict)
    outputs: list[str] = field(default_factory=list)
    elapsed_seconds: float = 0.0

    def record_input(self, path: str, data: bytes) -> None:
        self.inputs[path] = hashlib.sha256(data).hexdigest()

    def to_json_dict(self) -> dict:
        return {
            "schema": 1,
            "command": self.command,
            "argv": self.argv,
            "version": self.version,
            "inputs": self.inputs,
            "outputs": self.outputs,
            "elapsed_seconds": round(self.elapsed_seconds, 6),
            "engine": engine_info(),
        }


@dataclass
class ParsedGraph:
    """A graph spec resolved to a graph, keeping construction labels."""

    spec: str
    graph: Graph
    pieces: dict[str, tuple[int, ...]] | None = None


def _ints(parts: list[str], spec: str, want: int, at_least: int | None = None):
    try:
        vals = [int(p) for p in parts]
    except ValueError:
        raise ValueError(f"bad graph spec {spec!r}: integer arguments expected")
    need = want if at_least is None else at_least
    if (at_least is None and len(vals) != want) or len(vals) < need:
        raise ValueError(f"bad graph spec {spec!r}: wrong argument count")
    return vals


def parse_graph_spec(spec: str, manifest: RunManifest | None = None) -> ParsedGraph:
    """Resolve a graph spec string.

    Families: complete:n, path:n, cycle:n, independent:n, star:n (n vertices,
    first is the center), matching:k (k disjoint edges), turan:n,r,
    kneser:t[,m], pattern:k, cluster:k,s, host:n,r,k, hostedge:n,r,k[,part],
    starhost:n,k,q, starred:n,r,k,l1,...,lr, trimmed:n,r,k,l1,...,lr.
    Literals and files: g6:TEXT, file:PATH (.json or graph6).
    """
    head, sep, rest = spec.partition(":")
    if not sep:
        raise ValueError(f"bad graph spec {spec!r}: expected family:args")
    parts = rest.split(",") if rest else []
    simple = {
        "complete": complete,
        "path": path,
        "cycle": cycle,
        "independent": independent,
        "star": star,
        "matching": matching,
    }
    if head in simple:
        (n,) = _ints(parts, spec, 1)
        return ParsedGraph(spec, simple[head](n))
    if head == "turan":
        n, r = _ints(parts, spec, 2)
        return ParsedGraph(spec, turan(n, r))
    if head == "kneser":
        vals = _ints(parts, spec, 1, at_least=1)
        if len(vals) == 1:
            return ParsedGraph(spec, kneser(vals[0]))
        if len(vals) == 2:
            return ParsedGraph(spec, kneser(vals[0], vals[1]))
        raise ValueError(f"bad graph spec {spec!r}: kneser takes t[,m]")
    if head == "pattern":
        (k,) = _ints(parts, spec, 1)
        return ParsedGraph(spec, counterexample_pattern(k))
    if head == "cluster":
        k, s = _ints(parts, spec, 2)
        return ParsedGraph(spec, star_cluster_pattern(k, s))
    if head == "host":
        n, r, k = _ints(parts, spec, 3)
        built = extremal_host(n, r, k)
        return ParsedGraph(spec, built.graph, dict(built.pieces))
    if head == "hostedge":
        vals = _ints(parts, spec, 3, at_least=3)
        if len(vals) == 3:
            built = extremal_host_with_edge(vals[0], vals[1], vals[2])
        elif len(vals) == 4:
            built = extremal_host_with_edge(vals[0], vals[1], vals[2], part=vals[3])
        else:
            raise ValueError(f"bad graph spec {spec!r}: hostedge takes n,r,k[,part]")
        return ParsedGraph(spec, built.graph, dict(built.pieces))
    if head == "starhost":
        n, k, q = _ints(parts, spec, 3)
        built = star_planted_host(n, k, q)
        return ParsedGraph(spec, built.graph, dict(built.pieces))
    if head in ("starred", "trimmed"):
        vals = _ints(parts, spec, 4, at_least=4)
        n, r, k = vals[:3]
        ells = vals[3:]
        if len(ells) != r:
            raise ValueError(f"bad graph spec {spec!r}: need one star size per part")
        build = starred_host if head == "starred" else trimmed_starred_host
        built = build(n, r, k, StarProfile(tuple(ells)))
        return ParsedGraph(spec, built.graph, dict(built.pieces))
    if head == "g6":
        return ParsedGraph(spec, from_graph6(rest))
    if head == "file":
        with open(rest, "rb") as fh:
            data = fh.read()
        if manifest is not None:
            manifest.record_input(rest, data)
        if rest.endswith(".json"):
            g, labels = from_json(data.decode())
            pieces: dict[str, tuple[int, ...]] | None = None
            if labels:
                grouped: dict[str, list[int]] = {}
                for v, name in labels.items():
                    grouped.setdefault(name, []).append(v)
                ordered = sorted(grouped, key=lambda name: min(grouped[name]))
                pieces = {name: tuple(sorted(grouped[name])) for name in ordered}
            return ParsedGraph(spec, g, pieces)
        for line in data.decode().splitlines():
            line = line.strip()
            if line:
                return ParsedGraph(spec, from_graph6(line))
        raise ValueError(f"file {rest!r} holds no graph")
    raise ValueError(f"bad graph spec {spec!r}: unknown family {head!r}")


def _parse_edges(text: str) -> list[tuple[int, int]]:
    edges = []
    for chunk in text.split(","):
        chunk = chunk.strip()
        if not chunk:
            continue
        a, sep, b = chunk.partition("-")
        if not sep:
            raise ValueError(f"bad edge {chunk!r}: expected u-v")
        edges.append((int(a), int(b)))
    return edges


def _parse_pieces(text: str) -> dict[str, list[int]]:
    pieces: dict[str, list[int]] = {}
    for chunk in text.split(";"):
        chunk = chunk.strip()
        if not chunk:
            continue
        name, sep, body = chunk.partition("=")
        if not sep:
            raise ValueError(f"bad piece {chunk!r}: expected NAME=vertices")
        vertices: list[int] = []
        for item in body.split(","):
            item = item.strip()
            lo, sep2, hi = item.partition("..")
            if sep2:
                vertices.extend(range(int(lo), int(hi) + 1))
            else:
                vertices.append(int(item))
        pieces[name.strip()] = vertices
    return pieces


def _emit(args, manifest: RunManifest, text: str) -> None:
    if getattr(args, "out", None):
        with open(args.out, "w") as fh:
            fh.write(text)
            if not text.endswith("\n"):
                fh.write("\n")
        manifest.outputs.append(args.out)
    else:
        print(text)


def _emit_json(args, manifest: RunManifest, doc: dict) -> None:
    _emit(args, manifest, json.dumps(doc, indent=2))


# -- subcommand handlers ---------------------------------------------------


def _cmd_construct(args, manifest: RunManifest) -> int:
    parsed = parse_graph_spec(args.spec, manifest)
    g = parsed.graph
    if args.format in ("g6", "graph6"):
        _emit(args, manifest, to_graph6(g))
    elif args.format == "json":
        labels = None
        if parsed.pieces:
            labels = {v: name for name, verts in parsed.pieces.items() for v in verts}
        _emit(args, manifest, to_json(g, labels))
    elif args.format == "dot":
        _emit(args, manifest, to_dot(g))
    else:
        raise ValueError(f"unknown format {args.format!r}")
    return 0


def _cmd_count(args, manifest: RunManifest) -> int:
    pattern = parse_graph_spec(args.pattern, manifest)
    host = parse_graph_spec(args.host, manifest)
    host_pieces = None
    pattern_pieces = None
    if args.host_pieces == "construction":
        if host.pieces is None:
            raise ValueError("host spec carries no construction pieces")
        host_pieces = host.pieces
    elif args.host_pieces:
        host_pieces = _parse_pieces(args.host_pieces)
    if args.pattern_pieces:
        pattern_pieces = _parse_pieces(args.pattern_pieces)
    if pattern_pieces is not None and host_pieces is None:
        raise ValueError("pattern pieces need host pieces to classify against")
    report = count_report(
        pattern.graph,
        host.graph,
        pattern_id=pattern.spec,
        host_id=host.spec,
        host_pieces=host_pieces,
        pattern_pieces=pattern_pieces,
    )
    _emit_json(args, manifest, report.to_json_dict())
    return 0


def _expect_exit(verdict: bool, expect: str | None) -> int:
    if expect is None:
        return 0
    return 0 if verdict == (expect == "true") else 1


def _cmd_check(args, manifest: RunManifest) -> int:
    parsed = parse_graph_spec(args.graph, manifest)
    g = parsed.graph
    if args.property == "critical":
        witness = is_color_k_critical(g, args.k)
        doc = {
            "schema": 1,
            "graph": parsed.spec,
            "k": args.k,
            "is_critical": witness is not None,
        }
        if witness is not None:
            doc["witness_matching"] = [list(e) for e in witness.matching]
            doc["chromatic_number"] = witness.chi
            doc["chromatic_number_after"] = witness.chi_after
        _emit_json(args, manifest, doc)
        return _expect_exit(witness is not None, args.expect)
    if args.property == "admissible":
        r = args.r if args.r is not None else chromatic_number(g) - 1
        report = admissibility_report(g, r, args.k, cap=args.max_types)
        report["graph"] = parsed.spec
        _emit_json(args, manifest, report)
        return _expect_exit(report["admissible"], args.expect)
    raise ValueError(f"unknown property {args.property!r}")


def _inf_str(value) -> str:
    return "inf" if value == float("inf") else str(value)


def _cmd_params(args, manifest: RunManifest) -> int:
    parsed = parse_graph_spec(args.graph, manifest)
    g = parsed.graph
    records = critical_subsets(g)
    doc = {
        "schema": 1,
        "graph": parsed.spec,
        "vertices": str(g.n),
        "edges": str(g.edge_count),
        "chromatic_number": str(chromatic_number(g)),
        "critical_size": str(critical_size(g)),
        "critical_subsets": str(len(records)),
        "critical_subsets_stable": str(sum(1 for rec in records if rec.stable)),
        "t_param": _inf_str(stable_threshold(g)),
        "s_param": _inf_str(unstable_threshold(g)),
    }
    _emit_json(args, manifest, doc)
    return 0


def _cmd_verify(args, manifest: RunManifest) -> int:
    if args.target == "petersen":
        ns = (args.n,) if args.n else (16, 18, 20)
        report = verify_petersen(ns)
    elif args.target == "part-window":
        lo, hi = args.n_from, args.n_to
        report = verify_part_window(range(lo, hi + 1), k=args.k)
    elif args.target == "counterexample":
        if args.n is None or args.q is None:
            raise ValueError("counterexample needs --n and --q")
        report = verify_counterexample(args.n, args.k, args.q, mode=args.mode)
    elif args.target == "surplus":
        if args.pattern is None or args.n is None or args.q is None:
            raise ValueError("surplus needs --pattern, --n and --q")
        pattern = parse_graph_spec(args.pattern, manifest)
        report = verify_surplus(
            pattern.graph, args.n, args.k, args.q, cap=args.max_placements
        )
    else:
        raise ValueError(f"unknown verify target {args.target!r}")
    if args.csv:
        rows = report.details.get("rows")
        if not rows:
            raise ValueError("csv output needs a sweep target with rows")
        header = list(rows[0])
        lines = [",".join(header)]
        for row in rows:
            lines.append(",".join(str(row[h]) for h in header))
        _emit(args, manifest, "\n".join(lines))
    else:
        _emit_json(args, manifest, report.to_json_dict())
    return 0 if report.agreement else 1


def _cmd_suite(args, manifest: RunManifest) -> int:
    doc = run_suite(args.name)
    print(summary_table(doc), file=sys.stderr)
    _emit_json(args, manifest, doc)
    return 0 if doc["passed"] else 1


# -- parser ----------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="supersat",
        description="Exact copy counting and verification for planted "
        "extremal graph constructions.",
    )
    parser.add_argument("--version", action="version", version=__version__)
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--out", help="write the primary output to this file")
    common.add_argument(
        "--manifest", help="write a JSON manifest of the run to this file"
    )
    sub = parser.add_subparsers(dest="subcommand", required=True)

    p = sub.add_parser(
        "construct", parents=[common], help="build a graph and print it"
    )
    p.add_argument("spec", help="graph spec, e.g. kneser:5 or host:13,3,2")
    p.add_argument(
        "--format", default="g6", choices=["g6", "graph6", "json", "dot"]
    )
    p.set_defaults(func=_cmd_construct)

    p = sub.add_parser(
        "count", parents=[common], help="count copies of a pattern in a host"
    )
    p.add_argument("--pattern", required=True)
    p.add_argument("--host", required=True)
    p.add_argument(
        "--host-pieces",
        help="'construction' to reuse the host builder's labels, or "
        "'X=0;V1=1..4;V2=5..8'",
    )
    p.add_argument(
        "--pattern-pieces", help="classify by pattern pieces, 'A=0..3;B=4..7'"
    )
    p.set_defaults(func=_cmd_count)

    p = sub.add_parser(
        "check", parents=[common], help="check a pattern property"
    )
    p.add_argument("property", choices=["critical", "admissible"])
    p.add_argument("--graph", required=True)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--r", type=int, help="class count (chromatic number - 1 if omitted)")
    p.add_argument("--expect", choices=["true", "false"])
    p.add_argument(
        "--max-types",
        type=int,
        default=TYPE_CAP,
        help=f"type enumeration cap (default {TYPE_CAP})",
    )
    p.set_defaults(func=_cmd_check)

    p = sub.add_parser(
        "params", parents=[common], help="structural parameters of a pattern"
    )
    p.add_argument("--graph", required=True)
    p.set_defaults(func=_cmd_params)

    p = sub.add_parser(
        "verify", parents=[common], help="check a closed form against counts"
    )
    p.add_argument(
        "target", choices=["petersen", "part-window", "counterexample", "surplus"]
    )
    p.add_argument("--n", type=int)
    p.add_argument("--k", type=int, default=2)
    p.add_argument("--q", type=int)
    p.add_argument("--mode", default="exact", choices=["exact", "formula"])
    p.add_argument("--n-from", type=int, default=11)
    p.add_argument("--n-to", type=int, default=15)
    p.add_argument("--pattern")
    p.add_argument(
        "--max-placements",
        type=int,
        default=SURPLUS_CAP,
        help=f"surplus subset cap (default {SURPLUS_CAP})",
    )
    p.add_argument(
        "--csv", action="store_true", help="emit sweep rows as CSV instead of JSON"
    )
    p.set_defaults(func=_cmd_verify)

    p = sub.add_parser("suite", parents=[common], help="run a named battery")
    p.add_argument("name", help="part-window, kneser, counterexample, petersen, all")
    p.set_defaults(func=_cmd_suite)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    manifest = RunManifest(
        command=args.subcommand,
        argv=list(sys.argv[1:] if argv is None else argv),
    )
    start = time.perf_counter()
    try:
        code = args.func(args, manifest)
    except CapExceeded as exc:
        print(f"resource cap exceeded: {exc}", file=sys.stderr)
        return 3
    except (ValueError, ArithmeticError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    manifest.elapsed_seconds = time.perf_counter() - start
    if getattr(args, "manifest", None):
        with open(args.manifest, "w") as fh:
            json.dump(manifest.to_json_dict(), fh, indent=2)
            fh.write("\n")
    return code


if __name__ == "__main__":
    sys.exit(main())
