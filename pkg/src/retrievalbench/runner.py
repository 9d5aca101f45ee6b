"""Experiment grid execution with bounded concurrency and resumable logs.

The run log is line-delimited JSON: one self-contained record per
(cell, sample) followed by a single summary line.  Records are written
strictly in grid order by one writer, so an interrupted run leaves a clean
prefix and resuming appends exactly the missing records; the finished file
is byte-identical to an uninterrupted run modulo timing fields.
"""

from __future__ import annotations

import configparser
import hashlib
import json
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path

from . import grade, modelio
from .errors import BadResponse, EmptyGrid, InvalidSpec, MalformedLog, Transport
from .modelio import GenerationParams, ResponseCache, SimChatEndpoint
from .promptkit import PromptParams, PromptStrategy, default_max_tokens, render
from .rng import derive_seed
from .taskgen import FAMILY_BY_KIND, TaskSpec, gen_embed_task, gen_task, validate_spec

SCHEMA_VERSION = 1
_TIMING_FIELDS = ("wall_time_ms",)


def parse_endpoint_entry(entry: str) -> tuple[str, str]:
    """An endpoint-axis entry to (model label, URI).

    Live endpoints are written `model@https://host/v1` so the model name
    rides along; simulator URIs are their own label.
    """
    if "@" in entry and not entry.startswith("sim:"):
        model, uri = entry.split("@", 1)
        if not model or not uri:
            raise InvalidSpec(f"bad endpoint entry {entry!r}; use model@url")
        return model, uri
    if entry.startswith("sim:"):
        return entry, entry
    raise InvalidSpec(
        f"endpoint entry {entry!r} needs a model label: use model@url"
    )


@dataclass(frozen=True)
class RunConfig:
    kinds: tuple[str, ...]
    N_values: tuple[int, ...]
    n_values: tuple[int, ...]
    strategies: tuple[str, ...]
    endpoints: tuple[str, ...]  # grid axis: "sim:<kind>" or "model@url"
    output_path: str
    samples_per_cell: int = 100
    seed_base: int = 0
    max_in_flight: int = 4
    value_range: tuple[int, int] = (0, 999)
    temperature: float = 0.0
    max_tokens: dict = field(default_factory=dict)  # strategy -> limit override
    question_first: bool = False
    cache_path: str | None = None

    def tokens_for(self, strategy: str) -> int:
        if strategy in self.max_tokens:
            return int(self.max_tokens[strategy])
        return default_max_tokens(strategy)


@dataclass(frozen=True)
class Cell:
    family: str
    kind: str
    N: int
    n: int
    strategy: str
    model: str
    endpoint_uri: str

    @property
    def cell_id(self) -> str:
        return f"{self.kind}|N={self.N}|n={self.n}|{self.strategy}|{self.model}"


_TRACE_STRATEGIES = ("one_by_one", "add_to_list")


def _is_trace_sim(uri: str) -> bool:
    if not uri.startswith("sim:"):
        return False
    return modelio.parse_sim_uri(uri).name in ("faithful_trace", "noisy_trace")


def expand_grid(config: RunConfig, endpoints=None) -> list[Cell]:
    """Cartesian product of the axes minus invalid cells, deterministic order."""
    entries = [parse_endpoint_entry(e) for e in (endpoints or config.endpoints)]
    if len({model for model, _ in entries}) != len(entries):
        raise InvalidSpec("endpoint model labels must be unique")
    cells: list[Cell] = []
    for kind in config.kinds:
        family = FAMILY_BY_KIND.get(kind)
        if family is None:
            raise InvalidSpec(f"unknown kind {kind!r}")
        for N in config.N_values:
            for n in config.n_values:
                for strategy in config.strategies:
                    PromptStrategy(strategy)  # validate early
                    if family == "arith" and strategy != "standard":
                        continue
                    try:
                        validate_spec(
                            TaskSpec(family, kind, N=N, n=n,
                                     value_range=config.value_range)
                        )
                    except InvalidSpec:
                        continue
                    for model, uri in entries:
                        if _is_trace_sim(uri) and strategy not in _TRACE_STRATEGIES:
                            continue  # trace sims have no answer for direct prompts
                        cell = Cell(family, kind, N, n, strategy, model, uri)
                        if cell not in cells:
                            cells.append(cell)
    if not cells:
        raise EmptyGrid("no valid cells in the configured grid")
    return cells


def sample_seed(seed_base: int, family: str, kind: str, N: int, n: int,
                value_range: tuple[int, int], index: int) -> int:
    """Task seed for one grid sample; strategy and model deliberately excluded
    so every strategy/model evaluates identical instances."""
    return derive_seed(
        seed_base, "task", family, kind, str(N), str(n),
        f"{value_range[0]}-{value_range[1]}", str(index),
    )


def _record_for(config: RunConfig, cell: Cell, index: int, endpoint, cache) -> dict:
    seed = sample_seed(
        config.seed_base, cell.family, cell.kind, cell.N, cell.n,
        config.value_range, index,
    )
    spec = TaskSpec(cell.family, cell.kind, N=cell.N, n=cell.n,
                    value_range=config.value_range, seed=seed)
    task = gen_task(spec)
    prompt = render(task, cell.strategy, PromptParams(config.question_first))
    params = GenerationParams(
        model_name=cell.model,
        temperature=config.temperature,
        max_tokens=config.tokens_for(cell.strategy),
    )
    started = time.monotonic()
    completion = modelio.chat(
        endpoint, prompt, params,
        cache=cache, task=task, strategy=cell.strategy,
        seed=derive_seed(seed, "sim"),
    )
    wall_ms = int((time.monotonic() - started) * 1000)

    parsed = grade.extract_answer(completion.text, cell.kind)
    error_class = grade.classify(parsed, task.gold)
    trace_report = None
    if cell.strategy in ("one_by_one", "add_to_list"):
        trace = grade.parse_trace(completion.text, cell.strategy)
        trace_report = grade.verify_trace(trace, task).to_json()

    return {
        "schema_version": SCHEMA_VERSION,
        "cell_id": cell.cell_id,
        "family": cell.family,
        "kind": cell.kind,
        "N": cell.N,
        "n": cell.n,
        "strategy": cell.strategy,
        "model": cell.model,
        "sample_index": index,
        "seed": seed,
        "value_range": list(config.value_range),
        "task_digest": _digest(task.context_text + "\n" + task.question_text),
        "prompt_digest": _digest(prompt),
        "gold": task.gold.to_json(),
        "completion": completion.to_json(),
        "parsed": parsed.to_json(),
        "error_class": error_class.value,
        "trace_report": trace_report,
        "wall_time_ms": wall_ms,
    }


def _digest(text: str) -> str:
    return hashlib.sha256(text.encode("utf-8")).hexdigest()[:16]


def _dump(obj: dict) -> str:
    return json.dumps(obj, sort_keys=True, ensure_ascii=False)


def _scan_existing(path: Path) -> tuple[set[tuple[str, int]], list[str]]:
    """Completed (cell_id, sample_index) pairs plus the kept record lines.

    Tolerates a truncated trailing line (crash mid-write) and drops any stale
    summary line so the rewritten file stays in canonical prefix form.
    """
    done: set[tuple[str, int]] = set()
    kept: list[str] = []
    raw = path.read_text(encoding="utf-8")
    for line in raw.split("\n"):
        if not line:
            continue
        try:
            obj = json.loads(line)
        except json.JSONDecodeError:
            continue  # truncated tail from a crash; will be regenerated
        if "summary" in obj:
            continue
        if "cell_id" in obj and "sample_index" in obj:
            done.add((obj["cell_id"], obj["sample_index"]))
            kept.append(line)
    return done, kept


def run(config: RunConfig, endpoints=None) -> Path:
    """Execute the grid; returns the run log path.

    `endpoints` overrides the config's endpoint axis.  Failed cells
    (transport exhaustion) never abort the run; they are listed in the
    summary footer and filled in by a later resume.
    """
    cells = expand_grid(config, endpoints)
    out = Path(config.output_path)
    out.parent.mkdir(parents=True, exist_ok=True)

    endpoint_objs: dict[str, object] = {}
    cache: ResponseCache | None = None
    for cell in cells:
        if cell.endpoint_uri not in endpoint_objs:
            endpoint_objs[cell.endpoint_uri] = modelio.make_chat_endpoint(
                cell.endpoint_uri
            )
            if config.cache_path and not isinstance(
                endpoint_objs[cell.endpoint_uri], SimChatEndpoint
            ):
                cache = cache or ResponseCache(config.cache_path)

    done: set[tuple[str, int]] = set()
    if out.exists():
        done, kept = _scan_existing(out)
        out.write_text("".join(line + "\n" for line in kept), encoding="utf-8")

    failed_cells: list[dict] = []
    written = len(done)
    with out.open("a", encoding="utf-8") as log:
        for cell in cells:
            pending = [
                i for i in range(config.samples_per_cell)
                if (cell.cell_id, i) not in done
            ]
            if not pending:
                continue
            endpoint = endpoint_objs[cell.endpoint_uri]
            use_cache = cache if not isinstance(endpoint, SimChatEndpoint) else None

            def work(index: int, _cell=cell, _endpoint=endpoint, _cache=use_cache):
                try:
                    return _record_for(config, _cell, index, _endpoint, _cache)
                except (Transport, BadResponse) as exc:
                    return {"_cell_failure": f"{type(exc).__name__}: {exc}"}

            with ThreadPoolExecutor(max_workers=config.max_in_flight) as pool:
                for record in pool.map(work, pending):
                    if "_cell_failure" in record:
                        failed_cells.append(
                            {"cell_id": cell.cell_id, "error": record["_cell_failure"]}
                        )
                        break
                    log.write(_dump(record) + "\n")
                    log.flush()
                    written += 1

        summary = {
            "schema_version": SCHEMA_VERSION,
            "summary": {
                "records": written,
                "cells": len(cells),
                "samples_per_cell": config.samples_per_cell,
                "complete": not failed_cells
                and written == len(cells) * config.samples_per_cell,
                "failed_cells": failed_cells,
            },
        }
        log.write(_dump(summary) + "\n")
        log.flush()
    return out


def read_log(path) -> tuple[list[dict], dict | None]:
    """All records plus the summary (or None); raises MalformedLog on junk."""
    records: list[dict] = []
    summary = None
    with Path(path).open("r", encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, start=1):
            line = line.strip()
            if not line:
                continue
            try:
                obj = json.loads(line)
            except json.JSONDecodeError as exc:
                raise MalformedLog(f"{path}:{lineno}: {exc}") from exc
            if "summary" in obj:
                summary = obj["summary"]
            elif "cell_id" in obj:
                records.append(obj)
            else:
                raise MalformedLog(f"{path}:{lineno}: neither record nor summary")
    return records, summary


def strip_timing(record: dict) -> dict:
    """Copy of a record with wall-clock fields removed, for log comparisons."""
    out = {k: v for k, v in record.items() if k not in _TIMING_FIELDS}
    if "completion" in out:
        out["completion"] = {
            k: v for k, v in out["completion"].items() if k != "latency_ms"
        }
    return out


def _task_for_record(record: dict):
    spec = TaskSpec(
        family=record["family"],
        kind=record["kind"],
        N=record["N"],
        n=record["n"],
        value_range=tuple(record["value_range"]),
        seed=record["seed"],
    )
    return gen_task(spec)


def rescore_record(record: dict) -> str:
    """Recompute the error class from the stored raw completion text."""
    task = _task_for_record(record)
    parsed = grade.extract_answer(record["completion"]["text"], record["kind"])
    return grade.classify(parsed, task.gold).value


def score_log(path) -> dict:
    """Re-grade every record; reports mismatches against stored classes."""
    records, _ = read_log(path)
    mismatches = []
    for record in records:
        fresh = rescore_record(record)
        if fresh != record["error_class"]:
            mismatches.append(
                {
                    "cell_id": record["cell_id"],
                    "sample_index": record["sample_index"],
                    "stored": record["error_class"],
                    "rescored": fresh,
                }
            )
    return {"records": len(records), "mismatches": mismatches}


def verify_traces(path, index: int | None = None) -> list[dict]:
    """Trace reports recomputed from raw text for one record or the whole log."""
    records, _ = read_log(path)
    if index is not None:
        records = [records[index]]
    reports = []
    for record in records:
        if record["strategy"] not in ("one_by_one", "add_to_list"):
            continue
        task = _task_for_record(record)
        trace = grade.parse_trace(record["completion"]["text"], record["strategy"])
        reports.append(
            {
                "cell_id": record["cell_id"],
                "sample_index": record["sample_index"],
                "trace_report": grade.verify_trace(trace, task).to_json(),
            }
        )
    return reports


def run_embed_eval(
    endpoint_uri: str,
    *,
    ranges: tuple[int, ...] = (30, 100, 1000, 10000),
    query_kinds: tuple[str, ...] = ("equal", "range"),
    samples: int = 100,
    seed_base: int = 0,
    embed_model: str = "",
) -> list[dict]:
    """Top-1 cosine retrieval accuracy per (query kind, candidate range)."""
    results = []
    for query_kind in query_kinds:
        for range_max in ranges:
            embedder = modelio.make_embedder(
                endpoint_uri, range_max=range_max, embed_model=embed_model
            )
            correct = 0
            for i in range(samples):
                seed = derive_seed(seed_base, "embed", query_kind, str(range_max), str(i))
                inst = gen_embed_task(range_max, query_kind, seed)
                vectors = modelio.embed(
                    embedder,
                    [inst.query_text] + [str(c) for c in inst.candidates],
                )
                if grade.score_embed(vectors[0], vectors[1:], inst.gold_index):
                    correct += 1
            results.append(
                {
                    "query_kind": query_kind,
                    "range_max": range_max,
                    "samples": samples,
                    "accuracy_pct": round(100.0 * correct / samples, 1),
                }
            )
    return results


def load_config(path, overrides: dict | None = None) -> RunConfig:
    """Read a RunConfig from an INI file ([run] section); overrides win."""
    parser = configparser.ConfigParser()
    parser.optionxform = str  # N_values and n_values are distinct keys
    try:
        read = parser.read(path)
    except configparser.Error as exc:
        raise InvalidSpec(f"bad config {path}: {exc}") from exc
    if not read:
        raise InvalidSpec(f"config file not found: {path}")
    if "run" not in parser:
        raise InvalidSpec(f"config {path} lacks a [run] section")
    section = parser["run"]

    def split_list(text: str) -> list[str]:
        return [t.strip() for t in text.split(",") if t.strip()]

    endpoints = tuple(split_list(section.get("endpoints", "")))
    if not endpoints and "endpoint" in section:
        # single-endpoint sugar: `endpoint = url` (+ `model = name` for live)
        uri = section["endpoint"]
        if uri.startswith("sim:"):
            endpoints = (uri,)
        else:
            endpoints = (f"{section.get('model', '')}@{uri}",)
    values: dict = {
        "kinds": tuple(split_list(section.get("kinds", ""))),
        "N_values": tuple(int(x) for x in split_list(section.get("N_values", ""))),
        "n_values": tuple(int(x) for x in split_list(section.get("n_values", "1"))),
        "strategies": tuple(split_list(section.get("strategies", "standard"))),
        "endpoints": endpoints,
        "output_path": section.get("output", "runlog.jsonl"),
        "samples_per_cell": section.getint("samples_per_cell", 100),
        "seed_base": section.getint("seed_base", 0),
        "max_in_flight": section.getint("max_in_flight", 4),
        "temperature": section.getfloat("temperature", 0.0),
        "question_first": section.getboolean("question_first", False),
        "cache_path": section.get("cache", None),
    }
    if "value_range" in section:
        lo, hi = (int(x) for x in split_list(section["value_range"]))
        values["value_range"] = (lo, hi)
    tokens = {}
    for strategy in PromptStrategy:
        key = f"max_tokens_{strategy.value}"
        if key in section:
            tokens[strategy.value] = section.getint(key)
    values["max_tokens"] = tokens

    if overrides:
        values.update({k: v for k, v in overrides.items() if v is not None})
    config = RunConfig(**values)
    if not config.kinds or not config.N_values or not config.endpoints:
        raise InvalidSpec("config requires kinds, N_values and endpoints")
    for entry in config.endpoints:
        parse_endpoint_entry(entry)  # fail fast on malformed entries
    return config
