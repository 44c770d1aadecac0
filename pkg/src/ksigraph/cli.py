"""Command-line front-end.

Subcommands mirror the library's workflows:

    generate   write a seeded model graph as a canonical edge list
    analyze    per-node centralities + distribution summary for a graph
    theory     closed-form G(n, p) expectations, optionally simulated
    verify     spectral/Cheeger bound report (exit 3 on any violation)
    calibrate  build or invert the attachment-ratio curve
    fit        distribution summary for a plain sample of values

Every run that writes files also writes a manifest.json recording the
command line, seed, RNG stream, input digests, and produced files; the
other outputs reference it. Outputs are byte-identical across repeated
runs with the same seed (the manifest timestamp is the only exception),
and --threads never changes values, only wall time.

Exit codes: 0 success, 1 input error, 2 domain error, 3 bound violation.
"""

from __future__ import annotations

import argparse
import csv
import hashlib
import json
import os
import sys
from datetime import datetime, timezone
from pathlib import Path

import numpy as np

from . import __version__
from .calibration import CalibrationCurve, build_curve, default_m_grid, invert
from .centrality import KSI, NORMALIZED_KSI, centrality_all
from .er_theory import (
    expected_boundary_edges,
    expected_normalized_ksi,
    simulate_boundary_edges,
    simulate_normalized_ksi,
    sparse_asymptotic,
)
from .errors import DomainError, KsigraphError, ParseError
from .fitting import summarize
from .generators import RNG_ALGORITHM, GeneratorSpec, build
from .graph import Graph, IngestOptions, load_edge_list_with_stats
from .spectral import verify_bounds

EXIT_OK = 0
EXIT_INPUT = 1
EXIT_DOMAIN = 2
EXIT_VIOLATION = 3

MANIFEST_NAME = "manifest.json"


class _Parser(argparse.ArgumentParser):
    # usage problems are input errors (exit 1), not argparse's default 2
    def error(self, message):
        self.print_usage(sys.stderr)
        raise ParseError(message)


def _common_flags(sub: argparse.ArgumentParser) -> None:
    sub.add_argument("--seed", type=int, default=0, help="RNG seed (default 0)")
    sub.add_argument(
        "--threads",
        type=int,
        default=None,
        help="worker threads; falls back to KSIGRAPH_THREADS, then 1",
    )
    sub.add_argument(
        "--output-dir", type=Path, default=Path("."), help="directory for output files"
    )


def _graph_source_flags(sub: argparse.ArgumentParser) -> None:
    sub.add_argument("--input", type=Path, help="edge-list file to read")
    sub.add_argument("--model", help="generator model instead of --input")
    sub.add_argument("--n", type=int, help="node-count parameter")
    sub.add_argument("--p", type=float, help="edge/rewire probability")
    sub.add_argument("--k", type=int, help="lattice degree (ws)")
    sub.add_argument("--m", type=int, help="attachment edges (ba/bhl)")
    sub.add_argument("--n0", type=int, help="initial core size (bhl)")
    sub.add_argument("--take-lcc", action="store_true", help="restrict to the largest component")
    sub.add_argument(
        "--keep-self-loops",
        action="store_true",
        help="treat self-loops in the input as an error instead of dropping them",
    )


def build_arg_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="ksigraph", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"ksigraph {__version__}")
    subs = parser.add_subparsers(dest="command", required=True)

    gen = subs.add_parser("generate", help="write a model graph as an edge list")
    _common_flags(gen)
    _graph_source_flags(gen)

    ana = subs.add_parser("analyze", help="centralities and distribution summary")
    _common_flags(ana)
    _graph_source_flags(ana)
    ana.add_argument("--bins", type=int, default=None, help="histogram bin count (default Sturges)")
    ana.add_argument("--normalized", action="store_true", help="also summarize normalized ksi")
    ana.add_argument("--shift", action="store_true", help="fit the Weibull to values - 1")

    theo = subs.add_parser("theory", help="closed-form G(n, p) expectations")
    _common_flags(theo)
    theo.add_argument("--n", type=int, required=True)
    theo.add_argument("--p", type=float, required=True)
    theo.add_argument("--simulate", type=int, metavar="REPS", help="add a Monte-Carlo comparison")

    ver = subs.add_parser("verify", help="check spectral and Cheeger lower bounds")
    _common_flags(ver)
    _graph_source_flags(ver)

    cal = subs.add_parser("calibrate", help="build or invert the attachment-ratio curve")
    _common_flags(cal)
    cal.add_argument("--invert", action="store_true", help="invert an existing curve")
    cal.add_argument("--n", type=int, help="network size for curve building")
    cal.add_argument("--m-grid", help="comma-separated attachment values")
    cal.add_argument("--reps", type=int, default=20)
    cal.add_argument("--curve", type=Path, help="curve JSON file (invert mode)")
    cal.add_argument("--xi-hat", type=float, help="target average normalized ksi (invert mode)")
    cal.add_argument("--n-target", type=int, help="size of the network to model (invert mode)")

    fit = subs.add_parser("fit", help="distribution summary for a value sample")
    _common_flags(fit)
    fit.add_argument("--values", type=Path, required=True, help="file with one value per line")
    fit.add_argument("--bins", type=int, default=None)
    fit.add_argument("--shift", action="store_true")

    return parser


def _threads(args) -> int:
    if args.threads is not None:
        return max(1, args.threads)
    env = os.environ.get("KSIGRAPH_THREADS")
    if env:
        try:
            return max(1, int(env))
        except ValueError:
            raise ParseError(f"KSIGRAPH_THREADS is not an integer: {env!r}")
    return 1


def _spec_from_args(args) -> GeneratorSpec:
    model = args.model
    params: dict = {}
    for key in ("n", "p", "k", "m", "n0"):
        value = getattr(args, key, None)
        if value is not None:
            params[key] = value
    # fixtures and models validate their own parameter sets
    return GeneratorSpec(model=model, params=params, seed=args.seed)


def _resolve_graph(args) -> tuple[Graph, dict]:
    """Load or generate the graph; returns it plus manifest metadata."""
    meta: dict = {"generator": None, "input": None, "ingest": None}
    if args.input is not None and args.model is not None:
        raise ParseError("give either --input or --model, not both")
    if args.input is not None:
        opts = IngestOptions(
            drop_self_loops=not args.keep_self_loops,
            take_lcc=args.take_lcc,
        )
        graph, stats = load_edge_list_with_stats(args.input, opts)
        meta["input"] = {
            "path": str(args.input),
            "sha256": hashlib.sha256(args.input.read_bytes()).hexdigest(),
        }
        meta["ingest"] = {
            "lines_read": stats.lines_read,
            "comment_lines": stats.comment_lines,
            "duplicate_edges": stats.duplicate_edges,
            "self_loops_dropped": stats.self_loops_dropped,
        }
        return graph, meta
    if args.model is None:
        raise ParseError("one of --input or --model is required")
    spec = _spec_from_args(args)
    graph = build(spec)
    if args.take_lcc:
        from .graph import largest_connected_component

        graph = largest_connected_component(graph)
    meta["generator"] = spec.to_dict()
    return graph, meta


def _jsonify(obj):
    if isinstance(obj, (np.floating,)):
        return float(obj)
    if isinstance(obj, (np.integer,)):
        return int(obj)
    if isinstance(obj, np.ndarray):
        return obj.tolist()
    raise TypeError(f"not JSON serializable: {type(obj)}")


def _dump_json(data: dict) -> str:
    return json.dumps(data, indent=2, sort_keys=True, default=_jsonify) + "\n"


def _write_manifest(out_dir: Path, args, meta: dict, outputs: list[str]) -> None:
    manifest = {
        "tool": "ksigraph",
        "version": __version__,
        "rng": RNG_ALGORITHM,
        "command": [args.command] + _replay_flags(args),
        "seed": args.seed,
        "threads": _threads(args),
        "generator": meta.get("generator"),
        "input": meta.get("input"),
        "ingest": meta.get("ingest"),
        "outputs": sorted(outputs),
        "timestamp": datetime.now(timezone.utc).isoformat(),
    }
    (out_dir / MANIFEST_NAME).write_text(_dump_json(manifest))


def _replay_flags(args) -> list[str]:
    flags = []
    for key, value in sorted(vars(args).items()):
        if key in ("command", "threads") or value in (None, False):
            continue
        name = "--" + key.replace("_", "-")
        if value is True:
            flags.append(name)
        else:
            flags.extend([name, str(value)])
    return flags


def _csv_writer(path: Path, header: list[str], rows) -> None:
    with open(path, "w", newline="") as fh:
        fh.write(f"# manifest: {MANIFEST_NAME}\n")
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(header)
        for row in rows:
            writer.writerow([_cell(v) for v in row])


def _cell(value) -> str:
    if isinstance(value, (float, np.floating)):
        return repr(float(value))
    return str(value)


def _cmd_generate(args) -> int:
    if args.model is None:
        raise ParseError("generate requires --model")
    graph, meta = _resolve_graph(args)
    out_dir = args.output_dir
    out_dir.mkdir(parents=True, exist_ok=True)
    lines = [f"{graph.labels[u]} {graph.labels[v]}" for u, v in graph.edges()]
    (out_dir / "edges.txt").write_text("\n".join(lines) + ("\n" if lines else ""))
    _write_manifest(out_dir, args, meta, ["edges.txt"])
    print(_dump_json({"n": graph.n, "m_edges": graph.m_edges, "file": "edges.txt"}), end="")
    return EXIT_OK


def _cmd_analyze(args) -> int:
    graph, meta = _resolve_graph(args)
    threads = _threads(args)
    out_dir = args.output_dir
    out_dir.mkdir(parents=True, exist_ok=True)

    ksi_vec = centrality_all(graph, KSI, threads=threads)
    nksi_vec = centrality_all(graph, NORMALIZED_KSI, threads=threads)
    outputs = []

    _csv_writer(
        out_dir / "centrality.csv",
        ["node_label", "degree", "boundary_edges", "ksi", "normalized_ksi"],
        (
            (graph.labels[i], int(ksi_vec.degrees[i]), int(ksi_vec.boundary[i]),
             float(ksi_vec.values[i]), float(nksi_vec.values[i]))
            for i in range(graph.n)
        ),
    )
    outputs.append("centrality.csv")

    summary = {
        "manifest": MANIFEST_NAME,
        "n": graph.n,
        "m_edges": graph.m_edges,
        "avg_ksi": ksi_vec.average,
        "avg_normalized_ksi": nksi_vec.average,
    }
    (out_dir / "summary.json").write_text(_dump_json(summary))
    outputs.append("summary.json")

    dist = summarize(ksi_vec.values, bins=args.bins, shift=args.shift)
    payload = dist.to_dict()
    payload["kind"] = KSI
    payload["manifest"] = MANIFEST_NAME
    (out_dir / "ksi_distribution.json").write_text(_dump_json(payload))
    outputs.append("ksi_distribution.json")

    if args.normalized:
        ndist = summarize(nksi_vec.values, bins=args.bins, shift=False)
        npayload = ndist.to_dict()
        npayload["kind"] = NORMALIZED_KSI
        npayload["manifest"] = MANIFEST_NAME
        (out_dir / "normalized_ksi_distribution.json").write_text(_dump_json(npayload))
        outputs.append("normalized_ksi_distribution.json")

    hist = dist.histogram
    _csv_writer(
        out_dir / "histogram.csv",
        ["bin_left", "bin_right", "count"],
        (
            (float(hist.edges[b]), float(hist.edges[b + 1]), int(hist.counts[b]))
            for b in range(hist.counts.size)
        ),
    )
    outputs.append("histogram.csv")

    qq_rows = [] if dist.qq is None else [(float(t), float(e)) for t, e in dist.qq]
    _csv_writer(out_dir / "qq.csv", ["theoretical", "empirical"], qq_rows)
    outputs.append("qq.csv")

    log_rows = []
    if dist.loglinear is not None:
        ll = dist.loglinear
        centers = hist.centers
        for b in range(hist.counts.size):
            count = int(hist.counts[b])
            center = float(centers[b])
            used = count > 0 and center <= ll.tail_point
            log_rows.append(
                (
                    center,
                    float(np.log(count)) if count > 0 else "",
                    ll.slope * center + ll.intercept,
                    int(used),
                )
            )
    _csv_writer(out_dir / "logfit.csv", ["bin_center", "log_count", "fitted_log_count", "used_in_fit"], log_rows)
    outputs.append("logfit.csv")

    _write_manifest(out_dir, args, meta, outputs)
    print(
        _dump_json(
            {
                "verdict": dist.verdict,
                "skewness": dist.skewness,
                "avg_ksi": ksi_vec.average,
                "avg_normalized_ksi": nksi_vec.average,
                "output_dir": str(out_dir),
            }
        ),
        end="",
    )
    return EXIT_OK


def _cmd_theory(args) -> int:
    n, p = args.n, args.p
    lam = p * n
    result = {
        "n": n,
        "p": p,
        "expected_boundary_edges": expected_boundary_edges(n, p),
        "expected_normalized_ksi": expected_normalized_ksi(n, p),
        "lambda": lam,
        "sparse_asymptotic": sparse_asymptotic(lam, n) if lam > 0 else None,
    }
    if args.simulate:
        mc_nksi = simulate_normalized_ksi(n, p, args.simulate, seed=args.seed)
        mc_bnd = simulate_boundary_edges(n, p, args.simulate, seed=args.seed)
        result["simulation"] = {
            "reps": args.simulate,
            "normalized_ksi": {"mean": mc_nksi.mean, "stderr": mc_nksi.stderr},
            "boundary_edges": {"mean": mc_bnd.mean, "stderr": mc_bnd.stderr},
        }
    print(_dump_json(result), end="")
    return EXIT_OK


def _cmd_verify(args) -> int:
    graph, _ = _resolve_graph(args)
    report = verify_bounds(graph)
    payload = report.to_dict()
    print(_dump_json(payload), end="")
    return EXIT_OK if report.all_satisfied else EXIT_VIOLATION


def _cmd_calibrate(args) -> int:
    if args.invert:
        if args.curve is None or args.xi_hat is None or args.n_target is None:
            raise ParseError("invert mode needs --curve, --xi-hat, and --n-target")
        curve = CalibrationCurve.load(args.curve)
        m = invert(curve, args.xi_hat, args.n_target)
        print(_dump_json({"m": m, "n_target": args.n_target, "xi_hat": args.xi_hat}), end="")
        return EXIT_OK
    if args.n is None:
        raise ParseError("build mode needs --n")
    if args.m_grid:
        try:
            m_grid = [int(tok) for tok in args.m_grid.split(",") if tok.strip()]
        except ValueError:
            raise ParseError(f"--m-grid must be comma-separated integers, got {args.m_grid!r}")
    else:
        m_grid = default_m_grid(args.n)
    curve = build_curve(args.n, m_grid, reps=args.reps, seed=args.seed, threads=_threads(args))
    out_dir = args.output_dir
    out_dir.mkdir(parents=True, exist_ok=True)
    payload = curve.to_dict()
    payload["manifest"] = MANIFEST_NAME
    (out_dir / "curve.json").write_text(_dump_json(payload))
    _write_manifest(out_dir, args, {"generator": {"model": "ba", "n": args.n}}, ["curve.json"])
    rmse = None if curve.fit is None else curve.fit.rmse
    print(_dump_json({"points": len(curve.points), "fit_rmse": rmse, "file": "curve.json"}), end="")
    return EXIT_OK


def _read_values(path: Path) -> list[float]:
    values = []
    with open(path) as fh:
        for lineno, raw in enumerate(fh, start=1):
            line = raw.strip()
            if not line or line.startswith("#"):
                continue
            try:
                values.append(float(line))
            except ValueError:
                raise ParseError(f"not a number: {line!r}", lineno)
    if not values:
        raise ParseError("no values found in input")
    return values


def _cmd_fit(args) -> int:
    values = _read_values(args.values)
    dist = summarize(values, bins=args.bins, shift=args.shift)
    print(_dump_json(dist.to_dict()), end="")
    return EXIT_OK


_COMMANDS = {
    "generate": _cmd_generate,
    "analyze": _cmd_analyze,
    "theory": _cmd_theory,
    "verify": _cmd_verify,
    "calibrate": _cmd_calibrate,
    "fit": _cmd_fit,
}


def run(argv: list[str] | None = None) -> int:
    parser = build_arg_parser()
    try:
        args = parser.parse_args(argv)
        return _COMMANDS[args.command](args)
    except ParseError as exc:
        print(f"ksigraph: input error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except FileNotFoundError as exc:
        print(f"ksigraph: input error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except DomainError as exc:
        print(f"ksigraph: {exc}", file=sys.stderr)
        return EXIT_DOMAIN
    except KsigraphError as exc:
        print(f"ksigraph: {exc}", file=sys.stderr)
        return EXIT_DOMAIN


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
