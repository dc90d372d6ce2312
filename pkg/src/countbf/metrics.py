"""Evaluation metrics and report serialization.

evaluate() runs one (filter, workload) pair: it inserts the workload's keys,
answers its queries, and tallies false positives/negatives against the truth
labels.  The false-positive rate is FP divided by the number of truth-absent
queries (not all queries), so mixed and disjoint workloads are comparable;
a workload with no absent queries reports no rate at all.  Accuracy is
100 * (1 - (FP+FN)/n_query).  Timings are whole-loop monotonic-clock totals
around the batched insert and lookup calls; they are reported for relative
comparison on one machine, never as portable absolutes.
"""

from __future__ import annotations

import csv
import io
import json
import time
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .workloads import QueryWorkload

CSV_COLUMNS = (
    "filter",
    "kind",
    "alpha",
    "n_insert",
    "n_query",
    "fp",
    "fn",
    "fpp",
    "accuracy_pct",
    "memory_bits",
    "bits_per_item",
    "wastage_bits",
    "insert_ns",
    "lookup_ns",
)

# Timing columns carry no cross-run meaning; determinism checks skip them.
TIMING_COLUMNS = ("insert_ns", "lookup_ns")


@dataclass(frozen=True)
class BenchReport:
    """All measured quantities of one benchmark run."""

    filter_name: str
    kind: str
    alpha: int | None
    n_insert: int
    n_query: int
    false_positives: int
    false_negatives: int
    measured_fpp: float | None
    accuracy_pct: float
    memory_bits: int
    bits_per_item: float
    wastage_bits: int
    insert_ns_total: int
    lookup_ns_total: int


def accuracy_pct(fp: int, fn: int, n_query: int) -> float:
    """Percentage of correctly answered queries: 100 * (1 - (fp+fn)/n_query)."""
    if n_query < 1:
        raise ValueError("n_query must be >= 1")
    return 100.0 * (1.0 - (fp + fn) / n_query)


def bits_per_item(memory_bits: int, n: int) -> float:
    """Memory cost per inserted item."""
    if n < 1:
        raise ValueError("n must be >= 1")
    return memory_bits / n


def evaluate(filt, workload: QueryWorkload) -> BenchReport:
    """Insert the workload, answer its queries, and tally against truth."""
    truth = np.asarray(workload.truth, dtype=np.uint8)
    answers = np.zeros(workload.n_query, dtype=np.uint8)

    t0 = time.perf_counter_ns()
    filt.insert_many(workload.inserted)
    t1 = time.perf_counter_ns()
    filt.lookup_many(workload.queries, answers)
    t2 = time.perf_counter_ns()

    fp = int(np.count_nonzero((answers == 1) & (truth == 0)))
    fn = int(np.count_nonzero((answers == 0) & (truth == 1)))
    absent = int(np.count_nonzero(truth == 0))

    return BenchReport(
        filter_name=filt.name,
        kind=workload.kind,
        alpha=filt.alpha,
        n_insert=workload.n_insert,
        n_query=workload.n_query,
        false_positives=fp,
        false_negatives=fn,
        measured_fpp=fp / absent if absent else None,
        accuracy_pct=accuracy_pct(fp, fn, workload.n_query),
        memory_bits=filt.memory_bits(),
        bits_per_item=bits_per_item(filt.memory_bits(), workload.n_insert),
        wastage_bits=filt.wastage_bits,
        insert_ns_total=t1 - t0,
        lookup_ns_total=t2 - t1,
    )


def report_row(report: BenchReport) -> dict:
    """One report as a dict keyed by the CSV column names (native types)."""
    return {
        "filter": report.filter_name,
        "kind": report.kind,
        "alpha": report.alpha,
        "n_insert": report.n_insert,
        "n_query": report.n_query,
        "fp": report.false_positives,
        "fn": report.false_negatives,
        "fpp": report.measured_fpp,
        "accuracy_pct": report.accuracy_pct,
        "memory_bits": report.memory_bits,
        "bits_per_item": report.bits_per_item,
        "wastage_bits": report.wastage_bits,
        "insert_ns": report.insert_ns_total,
        "lookup_ns": report.lookup_ns_total,
    }


def _cell(value) -> str:
    if value is None:
        return ""
    if isinstance(value, float):
        return repr(value)
    return str(value)


def render_csv(reports: list[BenchReport], config_echo: str) -> str:
    """CSV text: a '# ...' config echo line, the header, one row per report."""
    buf = io.StringIO()
    buf.write(f"# {config_echo}\n")
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(CSV_COLUMNS)
    for report in reports:
        row = report_row(report)
        writer.writerow([_cell(row[col]) for col in CSV_COLUMNS])
    return buf.getvalue()


def render_json(reports: list[BenchReport], config: dict) -> str:
    """JSON mirror of the CSV: {config: ..., rows: [...]} with the same names."""
    return json.dumps(
        {"config": config, "rows": [report_row(r) for r in reports]},
        indent=2,
    ) + "\n"


def write_text(text: str, out: str | Path | None) -> None:
    """Write to a file, or stdout when out is None."""
    if out is None:
        import sys

        sys.stdout.write(text)
    else:
        Path(out).write_text(text, encoding="utf-8")
