"""``commdiff`` command line.

Exit status: 0 on success, 1 on invalid input, 2 on I/O failure.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import logging
import sys
from pathlib import Path

from .communities import dump_communities, load_communities
from .detectors import DetectorConfig, run_detector
from .exceptions import CommdiffError, ValidationError
from .graph import load_edge_list, stats
from .metrics import metric_report
from .pipeline import load_manifest, run_pipeline, write_bundle
from .ranking import rank_table, rank_tv_matrices
from .report import (
    atv_csv,
    dtv_csv,
    dumps,
    heatmap_csv,
    import_atv_grid,
    otv_csv,
    rank_table_json,
    read_heatmap_csv,
)
from .topovariance import set_tv, tv_matrix

logger = logging.getLogger("commdiff")


def _labeled_paths(values: list[str], flag: str) -> list[tuple[str, str]]:
    out = []
    for item in values or []:
        label, sep, path = item.partition("=")
        if not sep or not label or not path:
            raise ValidationError(f"{flag} expects LABEL=PATH, got {item!r}")
        out.append((label, path))
    return out


def _emit(text: str, out: str | None):
    if out:
        Path(out).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)


def _dataset_label(args) -> str:
    return args.dataset or Path(args.graph).stem


def _load_sets(args, g):
    pairs = _labeled_paths(args.communities, "--communities")
    if len(pairs) < 2:
        raise ValidationError("need at least two --communities LABEL=PATH entries")
    ds = _dataset_label(args)
    return [load_communities(path, g, algorithm=label, dataset=ds) for label, path in pairs]


def cmd_compare(args):
    g = load_edge_list(args.graph)
    cp = load_communities(args.primary, g, algorithm="primary")
    ca = load_communities(args.alt, g, algorithm="alternative")
    res = set_tv(g, cp, ca)
    digits = None if args.full_precision else 3

    def num(x):
        return float(x) if digits is None else round(x, digits)

    doc = {
        "value": num(res.value),
        "pairs": [
            {
                "i": p.primary_index,
                "j": p.alt_index,
                "overlap": p.overlap,
                "analytical": tv.analytical_count,
                "tv": num(tv.value),
            }
            for p, tv in zip(res.assignment.pairs, res.pair_values)
        ],
        "skipped": list(res.assignment.skipped),
    }
    if res.empty:
        doc["empty"] = True
    if args.dump_pairs:
        Path(args.dump_pairs).write_text(dumps(res.assignment.to_json(g)), encoding="utf-8")
    _emit(dumps(doc), args.out)


def cmd_heatmap(args):
    g = load_edge_list(args.graph)
    mat = tv_matrix(g, _load_sets(args, g))
    _emit(heatmap_csv(mat, None if args.full_precision else 3), args.out)


def cmd_rank(args):
    if args.atv_grid:
        algorithms, datasets, grid = import_atv_grid(args.atv_grid)
        table = rank_table(grid, algorithms, datasets)
    else:
        mats = []
        for ds, path in _labeled_paths(args.tv_matrix, "--tv-matrix"):
            with open(path, encoding="utf-8", newline="") as fh:
                mat = read_heatmap_csv(fh)
            mats.append(type(mat)(mat.algorithms, mat.values, ds))
        if args.graph:
            g = load_edge_list(args.graph)
            mats.append(tv_matrix(g, _load_sets(args, g)))
        if not mats:
            raise ValidationError("rank needs --atv-grid, --tv-matrix or --graph with --communities")
        table = rank_tv_matrices(mats)
    decimals = None if args.full_precision else 3
    if args.out_dir:
        files = {
            "atv.csv": atv_csv(table, decimals),
            "dtv.csv": dtv_csv(table),
            "otv.csv": otv_csv(table, decimals),
            "rank.json": dumps(rank_table_json(table, decimals)),
        }
        out = Path(args.out_dir)
        out.mkdir(parents=True, exist_ok=True)
        for name, text in files.items():
            (out / name).write_text(text, encoding="utf-8")
    sys.stdout.write(dumps(rank_table_json(table, decimals)))


def cmd_metrics(args):
    g = load_edge_list(args.graph)
    pairs = _labeled_paths(args.communities, "--communities")
    if not pairs:
        raise ValidationError("metrics needs at least one --communities LABEL=PATH entry")
    ds = _dataset_label(args)
    buf = io.StringIO()
    buf.write(f"# conductance_aggregate={args.conductance_aggregate}\n")
    writer = csv.DictWriter(
        buf, ["algorithm", "dataset", "isolability", "modularity", "conductance"], lineterminator="\n"
    )
    writer.writeheader()
    decimals = None if args.full_precision else 3
    for label, path in pairs:
        cs = load_communities(path, g, algorithm=label, dataset=ds)
        if not cs.is_partition:
            logger.warning("%s: cover input, modularity left blank", label)
        writer.writerow(metric_report(g, cs, args.conductance_aggregate).as_row(decimals))
    _emit(buf.getvalue(), args.out)


def cmd_detect(args):
    g = load_edge_list(args.graph)
    cfg = DetectorConfig(algorithm=args.algo, seed=args.seed, max_iterations=args.max_iter)
    cs = run_detector(g, cfg)
    _emit(dump_communities(cs, g), args.out)


def cmd_stats(args):
    st = stats(load_edge_list(args.graph))
    sys.stdout.write(json.dumps({"nodes": st.nodes, "edges": st.edges, "avg_degree": round(st.avg_degree, 2)}) + "\n")


def cmd_pipeline(args):
    manifest = load_manifest(args.manifest, output_dir=args.out_dir)
    if args.full_precision:
        manifest = type(manifest)(**{**manifest.__dict__, "full_precision": True})
    bundle = run_pipeline(manifest)
    for path in write_bundle(bundle, manifest.output_dir):
        logger.info("wrote %s", path)
    otv = bundle.rank_table.otv_for()
    sys.stdout.write(" ".join(f"{a}={r}" for a, r in otv.items()) + "\n")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="commdiff", description="Compare community structures by topological variance.")
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, graph=True):
        if graph:
            p.add_argument("--graph", required=True, help="edge list file")
        p.add_argument("--out", help="write output here instead of stdout")
        p.add_argument("--full-precision", action="store_true", help="do not round to 3 decimals")

    p = sub.add_parser("compare", help="TV of a primary community set against an alternative")
    common(p)
    p.add_argument("--primary", required=True)
    p.add_argument("--alt", required=True)
    p.add_argument("--dump-pairs", help="write the comparable pairs as JSON")
    p.set_defaults(func=cmd_compare)

    p = sub.add_parser("heatmap", help="TV matrix CSV (rows alternative, columns primary)")
    common(p)
    p.add_argument("--communities", action="append", metavar="ALGO=PATH")
    p.add_argument("--dataset")
    p.set_defaults(func=cmd_heatmap)

    p = sub.add_parser("rank", help="ATV, DTV and OTV rankings")
    p.add_argument("--atv-grid", help="CSV, rows = algorithms, columns = datasets")
    p.add_argument("--tv-matrix", action="append", metavar="DATASET=PATH", help="heatmap CSV per dataset")
    p.add_argument("--graph")
    p.add_argument("--communities", action="append", metavar="ALGO=PATH")
    p.add_argument("--dataset")
    p.add_argument("--out-dir")
    p.add_argument("--full-precision", action="store_true")
    p.set_defaults(func=cmd_rank)

    p = sub.add_parser("metrics", help="modularity, conductance and isolability CSV")
    common(p)
    p.add_argument("--communities", action="append", metavar="ALGO=PATH")
    p.add_argument("--dataset")
    p.add_argument("--conductance-aggregate", choices=("mean", "max"), default="mean")
    p.set_defaults(func=cmd_metrics)

    p = sub.add_parser("detect", help="run a reference detector")
    common(p)
    p.add_argument("--algo", choices=("lpa", "greedy_modularity"), default="lpa")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--max-iter", type=int, default=100)
    p.set_defaults(func=cmd_detect)

    p = sub.add_parser("stats", help="node count, edge count and average degree")
    p.add_argument("--graph", required=True)
    p.set_defaults(func=cmd_stats)

    p = sub.add_parser("pipeline", help="run a manifest end to end")
    p.add_argument("--manifest", required=True)
    p.add_argument("--out-dir", help="override the manifest's output_dir")
    p.add_argument("--full-precision", action="store_true")
    p.set_defaults(func=cmd_pipeline)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(levelname)s: %(message)s")
    try:
        args.func(args)
    except (CommdiffError, KeyError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2 if isinstance(exc.__cause__, OSError) else 1
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    return 0


if __name__ == "__main__":
    sys.exit(main())
