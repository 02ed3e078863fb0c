"""Command-line interface for corpus-scale batch analysis.

Subcommands: analyze, features, generate, construct, expansion,
scaling-report. Common flags (given after the subcommand): --seed,
--threads, --format, --strict, --max-depth, --min-size, --max-width,
--timeout. The HCS_LOG environment variable sets the log level.

Exit codes: 0 full success, 1 usage or configuration errors (including an
empty input glob), 2 partial failures (some inputs processed, some produced
per-file error records on stderr).

Every JSON output embeds {tool, seed, schemaVersion}; CSV outputs get a
<name>.meta.json sidecar; DIMACS outputs carry the same metadata as leading
comment lines. Reruns with identical configuration are byte-identical, and
the thread count never changes output bytes (results are written in input
order).
"""

from __future__ import annotations

import argparse
import concurrent.futures
import glob
import hashlib
import json
import logging
import math
import os
import statistics
import sys
from dataclasses import dataclass
from fractions import Fraction

from . import __version__
from .cnf import Cnf, parse_dimacs, reduce_width, render_dimacs
from .errors import DegenerateFitError, ToolError
from .expansion import hcs_expansion_audit
from .features import FEATURE_NAMES, extract, supplementary_merge, write_csv
from .generators import (
    GenParams,
    complete_graph,
    cycle_graph,
    disjoint_copies,
    generate,
    planted_sidecar,
    random_kcnf,
    ring_cliques_blocks,
    ring_of_cliques,
    rooted_clique_product,
    tseitin,
)
from .hcs import decompose, tree_to_dot, tree_to_json
from .vig import build_vig

log = logging.getLogger("hcskit.cli")

SCHEMA_VERSION = 1
DEFAULT_EXACT_LIMIT = 14  # CLI default; the library caps exact expansion at 24


def _meta(seed: int) -> dict:
    return {
        "tool": {"name": "hcskit", "version": __version__},
        "seed": seed,
        "schemaVersion": SCHEMA_VERSION,
    }


def _dimacs_comments(seed: int, extra: str = "") -> list[str]:
    lines = [f"tool hcskit {__version__}", f"seed {seed}", f"schemaVersion {SCHEMA_VERSION}"]
    if extra:
        lines.append(extra)
    return lines


def _write_json(path: str, payload: dict) -> None:
    with open(path, "w", encoding="utf-8") as handle:
        json.dump(payload, handle, indent=2)
        handle.write("\n")


def _expand_inputs(patterns: list[str]) -> list[str]:
    paths: list[str] = []
    for pattern in patterns:
        hits = sorted(glob.glob(pattern))
        paths.extend(hits if hits else ([pattern] if os.path.exists(pattern) else []))
    seen: set[str] = set()
    unique = [p for p in paths if not (p in seen or seen.add(p))]
    return unique


def _stem(path: str) -> str:
    name = os.path.basename(path)
    return name[:-4] if name.endswith(".cnf") else name


@dataclass
class ErrorRecord:
    path: str
    error: str
    message: str

    def emit(self) -> None:
        print(
            json.dumps({"path": self.path, "error": self.error, "message": self.message}),
            file=sys.stderr,
        )


def _load_cnf(path: str, args: argparse.Namespace) -> Cnf:
    with open(path, "r", encoding="utf-8") as handle:
        cnf = parse_dimacs(handle.read(), strict=args.strict)
    if args.max_width:
        cnf = reduce_width(cnf, args.max_width)
    return cnf


def _run_per_file(paths, worker, args) -> tuple[int, list[ErrorRecord]]:
    """Run worker over files with the configured pool; input-order results.

    Returns (success count, error records). A per-file wall-clock timeout,
    when set, reports Timeout once the result has not arrived in time; the
    worker thread itself cannot be interrupted.
    """
    errors: list[ErrorRecord] = []
    done = 0
    with concurrent.futures.ThreadPoolExecutor(max_workers=args.threads) as pool:
        futures = [(path, pool.submit(worker, path)) for path in paths]
        for path, future in futures:
            try:
                future.result(timeout=args.timeout)
                done += 1
                log.info("processed %s", path)
            except concurrent.futures.TimeoutError:
                errors.append(ErrorRecord(path, "Timeout", f"exceeded {args.timeout}s"))
            except (ToolError, OSError, ValueError) as exc:
                errors.append(ErrorRecord(path, type(exc).__name__, str(exc)))
    for record in errors:
        record.emit()
    return done, errors


def _exit_code(done: int, errors: list[ErrorRecord]) -> int:
    return 0 if not errors else 2


def _fraction_str(value: Fraction | None) -> str | None:
    return None if value is None else f"{value.numerator}/{value.denominator}"


def _audit_json(rows) -> list[dict]:
    return [
        {
            "node": r.node,
            "depth": r.depth,
            "size": r.size,
            "leaf": r.leaf,
            "interEdges": r.inter_edges,
            "expansionUpperReport": r.upper_report,
            "exactH": _fraction_str(r.exact_h),
            "exactHFloat": None if r.exact_h is None else float(r.exact_h),
            "witness": None if r.witness is None else list(r.witness),
        }
        for r in rows
    ]


def cmd_analyze(args: argparse.Namespace) -> int:
    paths = _expand_inputs(args.inputs)
    if not paths:
        print("no inputs", file=sys.stderr)
        return 1
    os.makedirs(args.out, exist_ok=True)

    def worker(path: str) -> None:
        cnf = _load_cnf(path, args)
        vig = build_vig(cnf)
        tree = decompose(vig, args.seed, max_depth=args.max_depth, min_size=args.min_size)
        stem = _stem(path)
        if args.format == "dot":
            out_path = os.path.join(args.out, f"{stem}.tree.dot")
            with open(out_path, "w", encoding="utf-8") as handle:
                handle.write(tree_to_dot(tree))
            return
        payload = dict(_meta(args.seed))
        payload.update(
            {
                "instance": stem,
                "numVars": cnf.num_vars,
                "numClausesRaw": len(cnf.clauses),
                "numClausesDistinct": cnf.distinct_clause_count(),
                "graph": {"numVertices": vig.num_vertices, "numEdges": vig.num_edges},
                "tree": tree_to_json(tree, include_vertices=args.vertices),
                "expansionAudit": _audit_json(
                    hcs_expansion_audit(vig, tree, exact_limit=args.exact_limit)
                ),
                "mergeability": supplementary_merge(cnf),
            }
        )
        _write_json(os.path.join(args.out, f"{stem}.analysis.json"), payload)

    done, errors = _run_per_file(paths, worker, args)
    return _exit_code(done, errors)


def _read_labels(path: str) -> dict[str, str]:
    import csv as _csv

    labels: dict[str, str] = {}
    with open(path, "r", encoding="utf-8", newline="") as handle:
        for row in _csv.reader(handle):
            if not row or row[0] == "instance":
                continue
            if len(row) < 2:
                raise ValueError(f"labels file row needs two columns: {row!r}")
            labels[row[0]] = row[1]
    return labels


def cmd_features(args: argparse.Namespace) -> int:
    paths = _expand_inputs(args.inputs)
    if not paths:
        print("no inputs", file=sys.stderr)
        return 1
    labels: dict[str, str] = {}
    if args.labels:
        labels = _read_labels(args.labels)
        missing = [_stem(p) for p in paths if _stem(p) not in labels]
        if missing:
            print(f"labels file missing instances: {', '.join(missing)}", file=sys.stderr)
            return 1

    results: dict[str, object] = {}

    def worker(path: str) -> None:
        results[path] = extract(
            _load_cnf(path, args), args.seed, max_depth=args.max_depth, min_size=args.min_size
        )

    done, errors = _run_per_file(paths, worker, args)
    if not done:
        return _exit_code(done, errors)
    rows = [
        (_stem(path), labels.get(_stem(path)), results[path])
        for path in paths
        if path in results
    ]
    write_csv(rows, args.out)
    meta = dict(_meta(args.seed))
    meta["inputs"] = [_stem(p) for p in paths if p in results]
    _write_json(args.out + ".meta.json", meta)
    return _exit_code(done, errors)


def cmd_expansion(args: argparse.Namespace) -> int:
    paths = _expand_inputs(args.inputs)
    if not paths:
        print("no inputs", file=sys.stderr)
        return 1
    os.makedirs(args.out, exist_ok=True)

    def worker(path: str) -> None:
        cnf = _load_cnf(path, args)
        vig = build_vig(cnf)
        tree = decompose(vig, args.seed, max_depth=args.max_depth, min_size=args.min_size)
        payload = dict(_meta(args.seed))
        payload.update(
            {
                "instance": _stem(path),
                "exactLimit": args.exact_limit,
                "audit": _audit_json(hcs_expansion_audit(vig, tree, exact_limit=args.exact_limit)),
            }
        )
        _write_json(os.path.join(args.out, f"{_stem(path)}.expansion.json"), payload)

    done, errors = _run_per_file(paths, worker, args)
    return _exit_code(done, errors)


def _params_hash(entry: dict) -> str:
    canon = json.dumps({k: v for k, v in sorted(entry.items()) if k != "seed"})
    return hashlib.blake2b(canon.encode(), digest_size=4).hexdigest()


def _gen_entry(entry: dict, outdir: str) -> str:
    params = GenParams(**entry)
    instance = generate(params)
    name = f"gen_{_params_hash(entry)}_s{params.seed}"
    extra = (
        f"params depth={params.depth} degree={params.degree} leafSize={params.leaf_size} "
        f"clauseWidth={params.clause_width} cvr={params.cvr} beta={params.powerlaw_beta} "
        f"bridge={params.bridge_fraction} iv={params.inter_var_fraction}"
    )
    with open(os.path.join(outdir, name + ".cnf"), "w", encoding="utf-8") as handle:
        handle.write(render_dimacs(instance.cnf, comments=_dimacs_comments(params.seed, extra)))
    sidecar = dict(_meta(params.seed))
    sidecar.update(planted_sidecar(instance))
    _write_json(os.path.join(outdir, name + ".json"), sidecar)
    return name


def cmd_generate(args: argparse.Namespace) -> int:
    entries: list[dict] = []
    if args.manifest:
        with open(args.manifest, "r", encoding="utf-8") as handle:
            manifest = json.load(handle)
        if not isinstance(manifest, list):
            print("manifest must be a JSON list of parameter objects", file=sys.stderr)
            return 1
        entries = [dict(entry) for entry in manifest]
    else:
        if args.depth is None or args.degree is None or args.leaf_size is None:
            print("need --manifest or --depth/--degree/--leaf-size", file=sys.stderr)
            return 1
        base = {
            "depth": args.depth,
            "degree": args.degree,
            "leaf_size": args.leaf_size,
            "clause_width": args.clause_width,
            "cvr": args.cvr,
            "bridge_fraction": args.bridge,
            "inter_var_fraction": args.iv,
        }
        if args.beta is not None:
            base["powerlaw_beta"] = args.beta
        entries = [dict(base, seed=args.seed + i) for i in range(args.seeds)]
    if not entries:
        print("no inputs", file=sys.stderr)
        return 1
    os.makedirs(args.outdir, exist_ok=True)

    done = 0
    errors: list[ErrorRecord] = []
    for index, entry in enumerate(entries):
        entry.setdefault("seed", args.seed)
        try:
            name = _gen_entry(entry, args.outdir)
            done += 1
            log.info("generated %s", name)
        except (ToolError, TypeError, OSError) as exc:
            errors.append(ErrorRecord(f"manifest[{index}]", type(exc).__name__, str(exc)))
    for record in errors:
        record.emit()
    return _exit_code(done, errors)


def _write_instance(outdir: str, name: str, cnf: Cnf, seed: int, sidecar: dict) -> None:
    os.makedirs(outdir, exist_ok=True)
    with open(os.path.join(outdir, name + ".cnf"), "w", encoding="utf-8") as handle:
        handle.write(render_dimacs(cnf, comments=_dimacs_comments(seed)))
    payload = dict(_meta(seed))
    payload.update(sidecar)
    _write_json(os.path.join(outdir, name + ".json"), payload)


def cmd_construct(args: argparse.Namespace) -> int:
    try:
        if args.construction == "ring-of-cliques":
            _, cnf = ring_of_cliques(args.q, args.c, seed=args.seed)
            blocks = ring_cliques_blocks(args.q, args.c)
            _write_instance(
                args.outdir,
                f"ring_q{args.q}_c{args.c}_s{args.seed}",
                cnf,
                args.seed,
                {
                    "kind": "ringOfCliques",
                    "q": args.q,
                    "c": args.c,
                    "cliques": [[v + 1 for v in block] for block in blocks],
                },
            )
        elif args.construction == "disjoint-copies":
            base = _load_cnf(args.input, args)
            cnf = disjoint_copies(base, args.t)
            _write_instance(
                args.outdir,
                f"{_stem(args.input)}_x{args.t}",
                cnf,
                args.seed,
                {
                    "kind": "disjointCopies",
                    "t": args.t,
                    "sourceVars": base.num_vars,
                    "copies": [
                        [i * base.num_vars + 1, (i + 1) * base.num_vars] for i in range(args.t)
                    ],
                },
            )
        elif args.construction == "rooted-product":
            base = _load_cnf(args.input, args)
            cnf = rooted_clique_product(base, args.p, args.t)
            _write_instance(
                args.outdir,
                f"{_stem(args.input)}_rp_p{args.p}_t{args.t}",
                cnf,
                args.seed,
                {"kind": "rootedCliqueProduct", "p": args.p, "t": args.t, "sourceVars": base.num_vars},
            )
        elif args.construction == "random-kcnf":
            for i in range(args.count):
                seed = args.seed + i
                cnf = random_kcnf(args.n, args.k, args.cvr, seed=seed)
                _write_instance(
                    args.outdir,
                    f"kcnf_n{args.n}_k{args.k}_cvr{args.cvr}_s{seed}",
                    cnf,
                    seed,
                    {"kind": "randomKcnf", "n": args.n, "k": args.k, "cvr": args.cvr},
                )
        elif args.construction == "tseitin":
            graph = cycle_graph(args.n) if args.base == "cycle" else complete_graph(args.n)
            charges = None
            if args.charges:
                charges = tuple(int(bit) for bit in args.charges.split(","))
            cnf = tseitin(graph, charges, seed=args.seed)
            used = charges if charges is not None else (1,) + (0,) * (args.n - 1)
            _write_instance(
                args.outdir,
                f"tseitin_{args.base}{args.n}_s{args.seed}",
                cnf,
                args.seed,
                {
                    "kind": "tseitin",
                    "base": args.base,
                    "n": args.n,
                    "charges": list(used),
                    "edgeVars": [[u + 1, v + 1, i + 1] for i, (u, v) in enumerate(graph.edges())],
                },
            )
        else:  # unreachable with argparse choices
            return 1
    except (ToolError, OSError, ValueError) as exc:
        ErrorRecord(args.construction, type(exc).__name__, str(exc)).emit()
        return 2
    return 0


def scaling_fit(points: list[tuple[float, float]]) -> tuple[float, float, int]:
    """Least-squares slope and intercept in log10-log10 space.

    Non-positive coordinates are dropped; fewer than three usable points
    raise DegenerateFitError. Returns (slope, intercept, points used).
    """
    usable = [(x, y) for x, y in points if x > 0 and y > 0]
    if len(usable) < 3:
        raise DegenerateFitError(f"need at least 3 positive points, got {len(usable)}")
    xs = [math.log10(x) for x, _ in usable]
    ys = [math.log10(y) for _, y in usable]
    try:
        slope, intercept = statistics.linear_regression(xs, ys)
    except statistics.StatisticsError as exc:
        raise DegenerateFitError(str(exc)) from None
    return slope, intercept, len(usable)


def cmd_scaling_report(args: argparse.Namespace) -> int:
    import csv as _csv

    with open(args.csv, "r", encoding="utf-8", newline="") as handle:
        rows = list(_csv.DictReader(handle))
    if not rows:
        print("no inputs", file=sys.stderr)
        return 1
    for column in (args.group_by, args.x, args.y):
        if column not in rows[0]:
            print(f"column {column!r} not in {args.csv}", file=sys.stderr)
            return 1
    groups: dict[str, list[tuple[float, float]]] = {}
    for row in rows:
        groups.setdefault(row[args.group_by], []).append(
            (float(row[args.x]), float(row[args.y]))
        )

    out_rows: list[list] = []
    errors: list[ErrorRecord] = []
    for group in sorted(groups):
        try:
            slope, intercept, used = scaling_fit(groups[group])
            out_rows.append([group, used, repr(slope), repr(intercept)])
        except DegenerateFitError as exc:
            errors.append(ErrorRecord(group, "DegenerateFit", str(exc)))
    for record in errors:
        record.emit()
    if not out_rows:
        return 1

    with open(args.out, "w", newline="", encoding="utf-8") as handle:
        writer = _csv.writer(handle)
        writer.writerow(["group", "count", "slope", "intercept"])
        writer.writerows(out_rows)
    meta = dict(_meta(args.seed))
    meta.update({"x": args.x, "y": args.y, "groupBy": args.group_by, "space": "log10"})
    _write_json(args.out + ".meta.json", meta)
    return 2 if errors else 0


def _common_flags(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--seed", type=int, default=0, help="RNG seed recorded in outputs")
    parser.add_argument("--threads", type=int, default=1, help="worker threads over input files")
    parser.add_argument("--strict", action="store_true", help="strict DIMACS parsing")
    parser.add_argument("--max-depth", type=int, default=64, help="decomposition depth cutoff")
    parser.add_argument("--min-size", type=int, default=1, help="stop splitting below this size")
    parser.add_argument(
        "--max-width", type=int, default=0, help="split parsed clauses wider than this (0 = off)"
    )
    parser.add_argument(
        "--timeout", type=float, default=None, help="per-file wall-clock timeout in seconds"
    )


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="hcskit", description="community structure toolkit for CNF formulas"
    )
    parser.add_argument("--version", action="version", version=f"hcskit {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p_analyze = sub.add_parser("analyze", help="decomposition tree + expansion audit per instance")
    p_analyze.add_argument("inputs", nargs="+", help="DIMACS files or globs")
    p_analyze.add_argument("--out", default=".", help="output directory")
    p_analyze.add_argument("--format", choices=["json", "dot"], default="json")
    p_analyze.add_argument("--vertices", action="store_true", help="include vertex lists in the tree")
    p_analyze.add_argument("--exact-limit", type=int, default=DEFAULT_EXACT_LIMIT)
    _common_flags(p_analyze)

    p_features = sub.add_parser("features", help="49-feature CSV over instances")
    p_features.add_argument("inputs", nargs="+")
    p_features.add_argument("--out", default="features.csv")
    p_features.add_argument("--labels", default=None, help="CSV mapping instance stem to label")
    _common_flags(p_features)

    p_generate = sub.add_parser("generate", help="planted hierarchical instances")
    p_generate.add_argument("--manifest", default=None, help="JSON list of parameter objects")
    p_generate.add_argument("--depth", type=int, default=None)
    p_generate.add_argument("--degree", type=int, default=None)
    p_generate.add_argument("--leaf-size", type=int, default=None)
    p_generate.add_argument("--clause-width", type=int, default=3)
    p_generate.add_argument("--cvr", type=float, default=2.5)
    p_generate.add_argument("--beta", type=float, default=None)
    p_generate.add_argument("--bridge", type=float, default=0.025)
    p_generate.add_argument("--iv", type=float, default=0.5)
    p_generate.add_argument("--seeds", type=int, default=1, help="consecutive seeds from --seed")
    p_generate.add_argument("--outdir", default=".")
    _common_flags(p_generate)

    p_construct = sub.add_parser("construct", help="reference constructions")
    csub = p_construct.add_subparsers(dest="construction", required=True)
    c_ring = csub.add_parser("ring-of-cliques")
    c_ring.add_argument("--q", type=int, required=True)
    c_ring.add_argument("--c", type=int, required=True)
    c_disj = csub.add_parser("disjoint-copies")
    c_disj.add_argument("--input", required=True)
    c_disj.add_argument("--t", type=int, required=True)
    c_root = csub.add_parser("rooted-product")
    c_root.add_argument("--input", required=True)
    c_root.add_argument("--p", type=int, required=True)
    c_root.add_argument("--t", type=int, default=2)
    c_kcnf = csub.add_parser("random-kcnf")
    c_kcnf.add_argument("--n", type=int, required=True)
    c_kcnf.add_argument("--k", type=int, required=True)
    c_kcnf.add_argument("--cvr", type=float, required=True)
    c_kcnf.add_argument("--count", type=int, default=1, help="consecutive seeds from --seed")
    c_tseitin = csub.add_parser("tseitin")
    c_tseitin.add_argument("--base", choices=["cycle", "complete"], default="cycle")
    c_tseitin.add_argument("--n", type=int, required=True)
    c_tseitin.add_argument("--charges", default=None, help="comma-separated bits per vertex")
    for sub_parser in (c_ring, c_disj, c_root, c_kcnf, c_tseitin):
        sub_parser.add_argument("--outdir", default=".")
        _common_flags(sub_parser)

    p_expansion = sub.add_parser("expansion", help="expansion audit per instance")
    p_expansion.add_argument("inputs", nargs="+")
    p_expansion.add_argument("--out", default=".")
    p_expansion.add_argument("--exact-limit", type=int, default=DEFAULT_EXACT_LIMIT)
    _common_flags(p_expansion)

    p_scaling = sub.add_parser("scaling-report", help="per-group log-log fit over a feature CSV")
    p_scaling.add_argument("csv")
    p_scaling.add_argument("--group-by", default="label")
    p_scaling.add_argument("--x", default="numVars")
    p_scaling.add_argument("--y", default="rootInterEdges")
    p_scaling.add_argument("--out", default="scaling.csv")
    _common_flags(p_scaling)

    return parser


COMMANDS = {
    "analyze": cmd_analyze,
    "features": cmd_features,
    "generate": cmd_generate,
    "construct": cmd_construct,
    "expansion": cmd_expansion,
    "scaling-report": cmd_scaling_report,
}


def main(argv: list[str] | None = None) -> int:
    level = os.environ.get("HCS_LOG", "WARNING").upper()
    logging.basicConfig(level=getattr(logging, level, logging.WARNING), stream=sys.stderr)
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 1 if exc.code not in (0, None) else 0
    try:
        return COMMANDS[args.command](args)
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
