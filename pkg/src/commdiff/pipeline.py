"""Manifest-driven runs over several datasets and algorithms.

A manifest (TOML or JSON) names datasets and algorithms::

    output_dir = "report"
    format = "csv"              # or "json"

    [[datasets]]
    label = "two_triangles"
    graph = "two_triangles.edges"

    [[algorithms]]
    label = "lpa"
    detector = "lpa"
    seed = 1

    [[algorithms]]
    label = "split"
    path = "{dataset}.split.cmty"     # or: paths = { two_triangles = "..." }

Relative paths resolve against the manifest's directory. The report is
computed in full before anything is written, and files are moved into place
only once all of them exist.
"""

from __future__ import annotations

import json
import logging
import os
import shutil
import sys
import tempfile
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path

from .communities import CommunitySet, load_communities, validate_against
from .datasets import check_stats
from .detectors import DetectorConfig, run_detector
from .exceptions import CommdiffError, ValidationError
from .graph import load_edge_list, stats
from .ranking import RankTable, rank_tv_matrices
from .report import atv_csv, dtv_csv, dumps, heatmap_csv, otv_csv, rank_table_json, tv_matrix_json
from .topovariance import TvMatrix, thread_limit, tv_matrix

if sys.version_info >= (3, 11):
    import tomllib
else:
    import tomli as tomllib

logger = logging.getLogger(__name__)


class PipelineError(CommdiffError):
    """A dataset or algorithm failed to load; names both."""


@dataclass(frozen=True)
class DatasetEntry:
    label: str
    graph: Path


@dataclass(frozen=True)
class AlgorithmEntry:
    label: str
    detector: DetectorConfig | None = None
    path: str | None = None
    paths: dict = field(default_factory=dict)

    def partition_path(self, dataset: str, base: Path) -> Path:
        if dataset in self.paths:
            return base / self.paths[dataset]
        if self.path is None:
            raise ValidationError(f"algorithm {self.label!r} has no partition file for dataset {dataset!r}")
        return base / self.path.format(dataset=dataset)


@dataclass(frozen=True)
class RunManifest:
    datasets: tuple[DatasetEntry, ...]
    algorithms: tuple[AlgorithmEntry, ...]
    output_dir: Path
    format: str = "csv"
    full_precision: bool = False
    base_dir: Path = Path(".")

    def validate(self):
        for kind, labels in (
            ("dataset", [d.label for d in self.datasets]),
            ("algorithm", [a.label for a in self.algorithms]),
        ):
            if not labels:
                raise ValidationError(f"manifest lists no {kind}s")
            if len(set(labels)) != len(labels):
                raise ValidationError(f"duplicate {kind} labels in manifest: {labels}")
        if self.format not in ("csv", "json"):
            raise ValidationError(f"unknown output format {self.format!r}")
        for d in self.datasets:
            if not d.graph.exists():
                raise FileNotFoundError(f"dataset {d.label!r}: graph file {d.graph} not found")
            for a in self.algorithms:
                if a.detector is None:
                    p = a.partition_path(d.label, self.base_dir)
                    if not p.exists():
                        raise FileNotFoundError(f"dataset {d.label!r}, algorithm {a.label!r}: {p} not found")


def _algorithm_entry(raw: dict) -> AlgorithmEntry:
    label = raw["label"]
    if "detector" in raw:
        cfg = DetectorConfig(
            algorithm=raw["detector"],
            seed=int(raw.get("seed", 0)),
            max_iterations=int(raw.get("max_iterations", 100)),
        )
        if cfg.algorithm not in ("lpa", "greedy_modularity"):
            raise ValidationError(f"algorithm {label!r}: unknown detector {cfg.algorithm!r}")
        return AlgorithmEntry(label, detector=cfg)
    if "path" not in raw and "paths" not in raw:
        raise ValidationError(f"algorithm {label!r} needs 'detector', 'path' or 'paths'")
    return AlgorithmEntry(label, path=raw.get("path"), paths=dict(raw.get("paths", {})))


def manifest_from_dict(doc: dict, base_dir: Path, output_dir: Path | None = None) -> RunManifest:
    try:
        datasets = tuple(DatasetEntry(d["label"], base_dir / d["graph"]) for d in doc.get("datasets", []))
        algorithms = tuple(_algorithm_entry(a) for a in doc.get("algorithms", []))
    except KeyError as exc:
        raise ValidationError(f"manifest entry missing key {exc}") from None
    out = output_dir if output_dir is not None else base_dir / doc.get("output_dir", "report")
    return RunManifest(
        datasets=datasets,
        algorithms=algorithms,
        output_dir=Path(out),
        format=doc.get("format", "csv"),
        full_precision=bool(doc.get("full_precision", False)),
        base_dir=base_dir,
    )


def load_manifest(path, output_dir=None) -> RunManifest:
    path = Path(path)
    if path.suffix.lower() == ".json":
        doc = json.loads(path.read_text(encoding="utf-8"))
    else:
        with open(path, "rb") as fh:
            doc = tomllib.load(fh)
    return manifest_from_dict(doc, path.parent, output_dir)


@dataclass
class ReportBundle:
    """File name -> contents, in write order, plus the ranking it summarizes."""

    files: dict[str, str]
    rank_table: RankTable
    matrices: list[TvMatrix]


def _run_dataset(manifest: RunManifest, entry: DatasetEntry) -> tuple[TvMatrix, list[str]]:
    log = []
    try:
        g = load_edge_list(entry.graph)
    except (CommdiffError, OSError) as exc:
        raise PipelineError(f"dataset {entry.label!r}: {exc}") from exc
    st = stats(g)
    log.append(f"[{entry.label}] nodes={st.nodes} edges={st.edges} avg_degree={st.avg_degree:.2f}")
    if g.diagnostics.self_loops or g.diagnostics.duplicate_edges:
        log.append(
            f"[{entry.label}] dropped self_loops={g.diagnostics.self_loops} "
            f"duplicate_edges={g.diagnostics.duplicate_edges}"
        )
    log.extend(f"[{entry.label}] stats mismatch: {msg}" for msg in check_stats(entry.label, st))

    sets: list[CommunitySet] = []
    for algo in manifest.algorithms:
        try:
            if algo.detector is not None:
                cs = run_detector(g, algo.detector)
            else:
                cs = load_communities(algo.partition_path(entry.label, manifest.base_dir), g)
        except (CommdiffError, OSError) as exc:
            raise PipelineError(f"dataset {entry.label!r}, algorithm {algo.label!r}: {exc}") from exc
        cs = cs.relabel(algorithm=algo.label, dataset=entry.label)
        diag = validate_against(cs, g)
        log.append(
            f"[{entry.label}/{algo.label}] kind={cs.kind} communities={len(cs)} "
            f"uncovered={len(diag.uncovered)} overlap={len(diag.overlap)} singletons={diag.singletons}"
        )
        sets.append(cs)

    mat = tv_matrix(g, sets, n_jobs=1)
    for p, prim in enumerate(mat.algorithms):
        for a, alt in enumerate(mat.algorithms):
            if p != a and mat.skipped_counts[p, a]:
                log.append(
                    f"[{entry.label}] {prim} vs {alt}: skipped {mat.skipped_counts[p, a]} "
                    f"primary communities with no overlap"
                )
            if p != a and mat.pair_counts[p, a] == 0:
                log.append(f"[{entry.label}] {prim} vs {alt}: no comparable pairs, TV set to 0")
    return mat, log


def run_pipeline(manifest: RunManifest) -> ReportBundle:
    manifest.validate()
    workers = min(thread_limit(), len(manifest.datasets))
    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(lambda d: _run_dataset(manifest, d), manifest.datasets))
    else:
        results = [_run_dataset(manifest, d) for d in manifest.datasets]

    matrices = [mat for mat, _ in results]
    table = rank_tv_matrices(matrices)
    decimals = None if manifest.full_precision else 3
    files: dict[str, str] = {}
    if manifest.format == "csv":
        for mat in matrices:
            files[f"tv_{mat.dataset}.csv"] = heatmap_csv(mat, decimals)
        files["atv.csv"] = atv_csv(table, decimals)
        files["dtv.csv"] = dtv_csv(table)
        files["otv.csv"] = otv_csv(table, decimals)
    else:
        doc = rank_table_json(table, decimals)
        doc["tv"] = [tv_matrix_json(mat, decimals) for mat in matrices]
        files["report.json"] = dumps(doc)
    log = [line for _, lines in results for line in lines]
    files["diagnostics.log"] = "".join(line + "\n" for line in log)
    return ReportBundle(files, table, matrices)


def write_bundle(bundle: ReportBundle, output_dir) -> list[Path]:
    """Write all files or none: stage in a temp dir, then move into place."""
    out = Path(output_dir)
    out.mkdir(parents=True, exist_ok=True)
    staging = Path(tempfile.mkdtemp(prefix=".commdiff-", dir=out))
    try:
        for name, text in bundle.files.items():
            with open(staging / name, "w", encoding="utf-8", newline="") as fh:
                fh.write(text)
        written = []
        for name in bundle.files:
            os.replace(staging / name, out / name)
            written.append(out / name)
        return written
    finally:
        shutil.rmtree(staging, ignore_errors=True)
