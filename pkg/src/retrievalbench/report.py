"""Aggregate run logs into summary tables and emit markdown/CSV."""

from __future__ import annotations

import csv
import io
from dataclasses import dataclass
from pathlib import Path

from .errors import MalformedLog
from .grade import ErrorClass
from .promptkit import PromptStrategy
from .runner import read_log

# Row key: (model, kind, strategy, n); columns: ascending N.
RowKey = tuple[str, str, str, int]

_STRATEGY_ORDER = {s.value: i for i, s in enumerate(PromptStrategy)}


@dataclass(frozen=True)
class TableCell:
    accuracy_pct: int
    over_pct: int
    under_pct: int
    mis_pct: int
    unparseable_pct: int
    mean_output_tokens: float
    samples: int
    adjusted: bool  # unparseable share absorbed a rounding residue

    def triple(self) -> str:
        return f"{self.accuracy_pct} ({self.over_pct}/{self.under_pct}/{self.mis_pct})"


@dataclass(frozen=True)
class SummaryTable:
    rows: tuple[RowKey, ...]
    N_values: tuple[int, ...]
    cells: dict  # (RowKey, N) -> TableCell; missing/invalid combos absent


def _half_up(x: float) -> int:
    return int(x + 0.5)


def _make_cell(counts: dict, tokens_total: int, samples: int) -> TableCell:
    pct = {
        cls: 100.0 * counts.get(cls, 0) / samples
        for cls in (
            ErrorClass.FULLY_CORRECT,
            ErrorClass.OVER_SELECTION,
            ErrorClass.UNDER_SELECTION,
            ErrorClass.MIS_SELECTION,
            ErrorClass.UNPARSEABLE,
        )
    }
    acc = _half_up(pct[ErrorClass.FULLY_CORRECT])
    over = _half_up(pct[ErrorClass.OVER_SELECTION])
    under = _half_up(pct[ErrorClass.UNDER_SELECTION])
    mis = _half_up(pct[ErrorClass.MIS_SELECTION])
    # Unparseable absorbs the rounding residue so the five shares always sum
    # to 100; if roundings overshoot, take the excess from the largest share.
    unparseable = 100 - (acc + over + under + mis)
    adjusted = unparseable != _half_up(pct[ErrorClass.UNPARSEABLE])
    if unparseable < 0:
        deficit = -unparseable
        unparseable = 0
        parts = [acc, over, under, mis]
        parts[parts.index(max(parts))] -= deficit
        acc, over, under, mis = parts
        adjusted = True
    return TableCell(
        accuracy_pct=acc,
        over_pct=over,
        under_pct=under,
        mis_pct=mis,
        unparseable_pct=unparseable,
        mean_output_tokens=tokens_total / samples,
        samples=samples,
        adjusted=adjusted,
    )


def aggregate(log_path_or_records) -> SummaryTable:
    """Per-cell percentages over samples, plus mean output tokens."""
    if isinstance(log_path_or_records, (str, Path)):
        records, _ = read_log(log_path_or_records)
    else:
        records = list(log_path_or_records)

    counts: dict = {}
    tokens: dict = {}
    samples: dict = {}
    for record in records:
        try:
            key = (
                (record["model"], record["kind"], record["strategy"], record["n"]),
                record["N"],
            )
            cls = ErrorClass(record["error_class"])
            out_tokens = record["completion"]["output_tokens"]
        except (KeyError, ValueError, TypeError) as exc:
            raise MalformedLog(f"bad record: {exc}") from exc
        cell_counts = counts.setdefault(key, {})
        cell_counts[cls] = cell_counts.get(cls, 0) + 1
        tokens[key] = tokens.get(key, 0) + out_tokens
        samples[key] = samples.get(key, 0) + 1

    rows = sorted(
        {key[0] for key in counts},
        key=lambda r: (r[0], r[1], _STRATEGY_ORDER.get(r[2], 99), r[3]),
    )
    N_values = sorted({key[1] for key in counts})
    cells = {
        key: _make_cell(counts[key], tokens[key], samples[key]) for key in counts
    }
    return SummaryTable(rows=tuple(rows), N_values=tuple(N_values), cells=cells)


def emit(table: SummaryTable, fmt: str) -> str:
    """Render the table; output is deterministic and stable on re-emission."""
    if fmt == "markdown":
        return _emit_markdown(table)
    if fmt == "csv":
        return _emit_csv(table)
    raise ValueError(f"unknown format {fmt!r}")


def _emit_markdown(table: SummaryTable) -> str:
    header = (
        ["Model", "Kind", "Strategy", "Num Matches (n)"]
        + [f"N={N}" for N in table.N_values]
        + ["Output Tokens"]
    )
    lines = [
        "| " + " | ".join(header) + " |",
        "|" + "|".join("---" for _ in header) + "|",
    ]
    any_adjusted = False
    for row in table.rows:
        model, kind, strategy, n = row
        rendered = []
        token_means = []
        for N in table.N_values:
            cell = table.cells.get((row, N))
            if cell is None:
                rendered.append("/")
            else:
                rendered.append(cell.triple())
                token_means.append(cell.mean_output_tokens)
                any_adjusted = any_adjusted or cell.adjusted
        mean_tokens = (
            str(_half_up(sum(token_means) / len(token_means))) if token_means else "/"
        )
        lines.append(
            "| " + " | ".join([model, kind, strategy, str(n), *rendered, mean_tokens]) + " |"
        )
    if any_adjusted:
        lines.append("")
        lines.append(
            "*Some cells absorbed an integer-rounding residue into the "
            "unparseable share.*"
        )
    return "\n".join(lines) + "\n"


_CSV_COLUMNS = (
    "model", "kind", "strategy", "n", "N", "samples",
    "accuracy_pct", "over_pct", "under_pct", "mis_pct", "unparseable_pct",
    "mean_output_tokens", "adjusted",
)


def _emit_csv(table: SummaryTable) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(_CSV_COLUMNS)
    for row in table.rows:
        model, kind, strategy, n = row
        for N in table.N_values:
            cell = table.cells.get((row, N))
            if cell is None:
                continue
            writer.writerow(
                [
                    model, kind, strategy, n, N, cell.samples,
                    cell.accuracy_pct, cell.over_pct, cell.under_pct,
                    cell.mis_pct, cell.unparseable_pct,
                    repr(cell.mean_output_tokens), int(cell.adjusted),
                ]
            )
    return buf.getvalue()


def parse_csv(text: str) -> SummaryTable:
    """Inverse of emit(..., "csv"); exact value round-trip."""
    reader = csv.DictReader(io.StringIO(text))
    rows: list[RowKey] = []
    N_values: set[int] = set()
    cells: dict = {}
    for line in reader:
        row: RowKey = (line["model"], line["kind"], line["strategy"], int(line["n"]))
        N = int(line["N"])
        if row not in rows:
            rows.append(row)
        N_values.add(N)
        cells[(row, N)] = TableCell(
            accuracy_pct=int(line["accuracy_pct"]),
            over_pct=int(line["over_pct"]),
            under_pct=int(line["under_pct"]),
            mis_pct=int(line["mis_pct"]),
            unparseable_pct=int(line["unparseable_pct"]),
            mean_output_tokens=float(line["mean_output_tokens"]),
            samples=int(line["samples"]),
            adjusted=bool(int(line["adjusted"])),
        )
    return SummaryTable(
        rows=tuple(rows), N_values=tuple(sorted(N_values)), cells=cells
    )
