"""End-to-end skyline pipeline, per-step timing and experiment sweeps."""

from __future__ import annotations

import csv
import logging
import time
from dataclasses import dataclass, field, replace
from pathlib import Path

from .distances import (
    Expected,
    ExpectedDistanceConfig,
    Majority,
    MajorityDistanceConfig,
    build_distance_matrix,
)
from .errors import ConfigurationError, StrategyError
from .graph import load_edge_list, synthesize_attributes
from .pruning import PruneConfig, as_query_set, bfs_prune, distance_prune
from .sampling import draw_samples, enumerate_worlds
from .seeds import derive_seed
from .skyline import bnl_skyline
from .strategies import KINDS, StrategyConfig, select_queries

log = logging.getLogger(__name__)

CSV_HEADER = (
    "dataset",
    "strategy",
    "query_size",
    "repeat",
    "semantics",
    "candidate_size",
    "skyline_size",
    "t_sample",
    "t_bfs_prune",
    "t_dist_prune",
    "t_distance",
    "t_skyline",
    "t_total",
    "status",
)
TIMING_COLUMNS = tuple(c for c in CSV_HEADER if c.startswith("t_"))
DEFAULT_QUERY_SIZES = (2, 3, 5, 8, 10, 15, 20)
SEMANTICS = ("majority", "expected")

# child-seed namespaces under the plan seed
_SYNTH, _SELECT, _SAMPLE = 0, 1, 2


@dataclass
class RunRecord:
    query_size: int
    strategy: str = ""
    repeat: int = 0
    semantics: str = ""
    dataset: str = ""
    candidate_size: int | None = None
    skyline_size: int | None = None
    sample_generation: float = 0.0
    bfs_pruning: float = 0.0
    distance_pruning: float = 0.0
    distance_computation: float = 0.0
    skyline_computation: float = 0.0
    total: float = 0.0
    status: str = "ok"
    queries: tuple = field(default=(), repr=False)
    skyline: tuple = field(default=(), repr=False)

    @property
    def skipped(self):
        return self.status.startswith("skipped")

    def csv_row(self):
        def num(x):
            return "" if self.skipped else f"{x:.6f}"

        def count(x):
            return "" if x is None else str(x)

        return [
            self.dataset,
            self.strategy,
            str(self.query_size),
            str(self.repeat),
            self.semantics,
            count(self.candidate_size),
            count(self.skyline_size),
            num(self.sample_generation),
            num(self.bfs_pruning),
            num(self.distance_pruning),
            num(self.distance_computation),
            num(self.skyline_computation),
            num(self.total),
            self.status,
        ]


def _semantics_name(config):
    if isinstance(config, MajorityDistanceConfig):
        return "majority"
    if isinstance(config, ExpectedDistanceConfig):
        return "expected"
    raise TypeError(f"expected a distance config, got {config!r}")


def run_query(graph, queries, semantics, prune_config=None, *, sample_seed=0, samples=None, workers=1):
    """Prune, compute the candidate x query distance matrix, extract the skyline.

    ``semantics`` is a :class:`MajorityDistanceConfig` or an
    :class:`ExpectedDistanceConfig`. For majority distance, ``samples`` may be
    supplied (e.g. an exhaustive world set); otherwise ``sample_count`` worlds
    are drawn with ``sample_seed``.
    """
    prune_config = prune_config or PruneConfig()
    name = _semantics_name(semantics)
    queries = as_query_set(graph, queries)
    record = RunRecord(query_size=len(queries), semantics=name, queries=tuple(queries))
    start = time.perf_counter()

    if name == "majority" and samples is None:
        t = time.perf_counter()
        samples = draw_samples(graph, semantics.sample_count, sample_seed, workers=workers)
        record.sample_generation = time.perf_counter() - t

    t = time.perf_counter()
    candidates = bfs_prune(graph, queries)
    record.bfs_pruning = time.perf_counter() - t

    if not prune_config.skip_distance_pruning:
        t = time.perf_counter()
        candidates = distance_prune(graph, candidates, queries, prune_config)
        record.distance_pruning = time.perf_counter() - t

    t = time.perf_counter()
    sem = Majority(samples, semantics) if name == "majority" else Expected(semantics)
    matrix = build_distance_matrix(graph, candidates, queries, sem)
    record.distance_computation = time.perf_counter() - t

    t = time.perf_counter()
    result = bnl_skyline(matrix)
    record.skyline_computation = time.perf_counter() - t

    record.total = time.perf_counter() - start
    record.candidate_size = len(candidates)
    record.skyline_size = len(result)
    record.skyline = result.vertices
    return result, record


# ---------------------------------------------------------------------------
# plans


@dataclass(frozen=True)
class ExperimentPlan:
    graph: Path
    out: Path | None = None
    dataset: str | None = None
    seed: int = 0
    synthesize: str = "auto"
    default_weight: float | None = None
    default_prob: float | None = None
    distances: tuple = ("majority",)
    strategies: tuple = ("RAND",)
    query_sizes: tuple = DEFAULT_QUERY_SIZES
    repeats: int = 10
    samples: int = 1000
    weighting_mode: str = "paper_weighted"
    worlds: str = "sampled"
    share_samples: bool = False
    max_hops: int = 4
    formula_mode: str = "definition"
    threshold: float = 400.0
    skip_distance_pruning: bool = False
    degree_threshold: int | None = None
    clustering_threshold: float = 0.0
    max_attempts: int = 100
    workers: int = 1

    def __post_init__(self):
        if not self.query_sizes or any(int(k) < 1 for k in self.query_sizes):
            raise ConfigurationError("query_sizes must be a non-empty list of positive integers")
        if self.repeats < 1:
            raise ConfigurationError("repeats must be >= 1")
        if not self.distances or any(d not in SEMANTICS for d in self.distances):
            raise ConfigurationError(f"distance must be drawn from {SEMANTICS}")
        if not self.strategies or any(s.upper() not in KINDS for s in self.strategies):
            raise ConfigurationError(f"strategy must be drawn from {tuple(k.lower() for k in KINDS)}")
        if self.synthesize not in ("auto", "always", "never"):
            raise ConfigurationError("synthesize must be auto, always or never")
        if self.worlds not in ("sampled", "exhaustive"):
            raise ConfigurationError("worlds must be sampled or exhaustive")
        if self.samples < 1:
            raise ConfigurationError("samples must be >= 1")
        try:
            self.majority_config()
            self.expected_config()
            self.prune_config()
        except ValueError as exc:
            raise ConfigurationError(str(exc)) from None

    @property
    def dataset_name(self):
        return self.dataset or Path(self.graph).stem

    def majority_config(self):
        return MajorityDistanceConfig(sample_count=self.samples, weighting_mode=self.weighting_mode)

    def expected_config(self):
        return ExpectedDistanceConfig(max_hops=self.max_hops, formula_mode=self.formula_mode)

    def prune_config(self):
        return PruneConfig(self.threshold, self.skip_distance_pruning)

    def strategy_config(self, kind, query_size, seed):
        return StrategyConfig(
            kind=kind,
            query_size=query_size,
            degree_threshold=self.degree_threshold,
            clustering_threshold=self.clustering_threshold,
            seed=seed,
            max_attempts=self.max_attempts,
        )


def _bool(text):
    value = str(text).strip().lower()
    if value in ("1", "true", "yes", "on"):
        return True
    if value in ("0", "false", "no", "off"):
        return False
    raise ConfigurationError(f"not a boolean: {text!r}")


def _list(text):
    return tuple(x.strip() for x in str(text).split(",") if x.strip())


def _int_list(text):
    try:
        return tuple(int(x) for x in _list(text))
    except ValueError:
        raise ConfigurationError(f"expected comma-separated integers, got {text!r}") from None


# plan-file key -> (ExperimentPlan field, converter)
PLAN_KEYS = {
    "graph": ("graph", Path),
    "out": ("out", Path),
    "dataset": ("dataset", str),
    "seed": ("seed", int),
    "synthesize": ("synthesize", str),
    "default-weight": ("default_weight", float),
    "default-prob": ("default_prob", float),
    "distance": ("distances", lambda s: tuple(x.lower() for x in _list(s))),
    "strategy": ("strategies", lambda s: tuple(x.upper() for x in _list(s))),
    "query-size": ("query_sizes", _int_list),
    "repeats": ("repeats", int),
    "samples": ("samples", int),
    "weighting-mode": ("weighting_mode", str),
    "worlds": ("worlds", str),
    "share-samples": ("share_samples", _bool),
    "max-hops": ("max_hops", int),
    "formula-mode": ("formula_mode", str),
    "threshold": ("threshold", float),
    "skip-distance-pruning": ("skip_distance_pruning", _bool),
    "degree-threshold": ("degree_threshold", int),
    "clustering-threshold": ("clustering_threshold", float),
    "max-attempts": ("max_attempts", int),
    "workers": ("workers", int),
}


def plan_from_mapping(values, base_dir=None):
    kwargs = {}
    for key, raw in values.items():
        key = key.strip().lower().replace("_", "-")
        if key not in PLAN_KEYS:
            raise ConfigurationError(f"unknown plan key {key!r}")
        name, convert = PLAN_KEYS[key]
        try:
            value = convert(raw)
        except ValueError:
            raise ConfigurationError(f"bad value for {key}: {raw!r}") from None
        if isinstance(value, Path) and base_dir is not None and not value.is_absolute():
            value = Path(base_dir) / value
        kwargs[name] = value
    if "graph" not in kwargs:
        raise ConfigurationError("plan needs a graph")
    return ExperimentPlan(**kwargs)


def parse_plan(path):
    """Read a ``key = value`` plan file; relative paths resolve against its directory."""
    path = Path(path)
    values = {}
    with path.open() as fh:
        for lineno, line in enumerate(fh, start=1):
            text = line.split("#", 1)[0].strip()
            if not text:
                continue
            if "=" not in text:
                raise ConfigurationError(f"{path}:{lineno}: expected 'key = value'")
            key, value = (part.strip() for part in text.split("=", 1))
            values[key] = value
    return plan_from_mapping(values, base_dir=path.parent)


def load_plan_graph(plan):
    needs_defaults = plan.synthesize != "never"
    graph = load_edge_list(
        plan.graph,
        default_weight=plan.default_weight if plan.default_weight is not None else (1.0 if needs_defaults else None),
        default_prob=plan.default_prob if plan.default_prob is not None else (1.0 if needs_defaults else None),
    )
    if plan.synthesize == "always" or (plan.synthesize == "auto" and not graph.has_attributes):
        graph = synthesize_attributes(graph, derive_seed(plan.seed, _SYNTH))
    return graph


def iter_plan(plan, graph):
    """Yield one record per (strategy, query size, repeat, semantics), in that nesting order."""
    majority = plan.majority_config()
    expected = plan.expected_config()
    prune_config = plan.prune_config()
    shared = None
    if "majority" in plan.distances:
        if plan.worlds == "exhaustive":
            shared = enumerate_worlds(graph)
        elif plan.share_samples:
            shared = draw_samples(graph, plan.samples, derive_seed(plan.seed, _SAMPLE), workers=plan.workers)
    ok_status = "ok-shared-samples" if plan.share_samples and plan.worlds == "sampled" else "ok"

    for s_idx, kind in enumerate(plan.strategies):
        for k in plan.query_sizes:
            for rep in range(plan.repeats):
                base = RunRecord(
                    query_size=k, strategy=kind.lower(), repeat=rep, dataset=plan.dataset_name
                )
                try:
                    queries = select_queries(
                        graph,
                        plan.strategy_config(kind, k, derive_seed(plan.seed, _SELECT, s_idx, k, rep)),
                    )
                except StrategyError as exc:
                    for sem in plan.distances:
                        yield replace(base, semantics=sem, status=f"skipped: {exc}")
                    continue
                for sem in plan.distances:
                    config = majority if sem == "majority" else expected
                    _, rec = run_query(
                        graph,
                        queries,
                        config,
                        prune_config,
                        sample_seed=derive_seed(plan.seed, _SAMPLE, s_idx, k, rep),
                        samples=shared if sem == "majority" else None,
                        workers=plan.workers,
                    )
                    rec.strategy = base.strategy
                    rec.repeat = rep
                    rec.dataset = base.dataset
                    rec.status = ok_status if sem == "majority" else "ok"
                    yield rec


def run_plan(plan, graph=None):
    """Run the full sweep, appending each record to ``plan.out`` as it completes."""
    if graph is None:
        graph = load_plan_graph(plan)
    records = []
    fh = writer = None
    if plan.out is not None:
        Path(plan.out).parent.mkdir(parents=True, exist_ok=True)
        fh = open(plan.out, "w", newline="")
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(CSV_HEADER)
        fh.flush()
    try:
        for rec in iter_plan(plan, graph):
            records.append(rec)
            if rec.skipped:
                log.info("skipped %s k=%d repeat=%d: %s", rec.strategy, rec.query_size, rec.repeat, rec.status)
            if writer is not None:
                writer.writerow(rec.csv_row())
                fh.flush()
    finally:
        if fh is not None:
            fh.close()
    return records


def strip_timing_columns(csv_text):
    """CSV text with the timing columns removed, for reproducibility checks."""
    rows = list(csv.reader(csv_text.splitlines()))
    if not rows:
        return ""
    keep = [i for i, name in enumerate(rows[0]) if name not in TIMING_COLUMNS]
    return "\n".join(",".join(row[i] for i in keep) for row in rows) + "\n"
