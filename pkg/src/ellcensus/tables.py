"""Recompute the embedded expected tables and diff them row by row."""

from __future__ import annotations

from dataclasses import dataclass, field

from .census import CensusReport, run_census
from .registry import get_curve, load_tables

MATCHES = "matches_computation"
PAPER_ONLY = "paper_only"
DISPUTED = "disputed"


@dataclass(frozen=True)
class RowDiff:
    p: int
    expected: int
    computed: int | None
    flag: str
    ok: bool
    note: str = ""


@dataclass
class TableDiff:
    table: int
    curve: str
    t: int
    mode: str
    rows: list[RowDiff]
    extra: list[tuple[int, int]] = field(default_factory=list)
    brun_printed: float | None = None
    brun_computed: float | None = None

    @property
    def mismatches(self) -> list[RowDiff]:
        """Rows flagged as matching computation that no longer do."""
        return [r for r in self.rows if r.flag == MATCHES and not r.ok]

    @property
    def disputed(self) -> list[RowDiff]:
        return [r for r in self.rows if r.flag == DISPUTED]

    def ok(self, strict: bool = False) -> bool:
        if strict:
            return all(r.ok for r in self.rows if r.flag != PAPER_ONLY) and not self.extra
        return not self.mismatches

    def lines(self) -> list[str]:
        out = [f"table {self.table}: {self.curve} t={self.t} mode={self.mode}"]
        for r in self.rows:
            status = "ok" if r.ok else "MISMATCH"
            got = "-" if r.computed is None else r.computed
            tail = f"  ({r.note})" if r.note else ""
            out.append(f"  p={r.p:<4d} printed={r.expected:<4d} computed={got!s:<4} {r.flag:<20s} {status}{tail}")
        for p, v in self.extra:
            out.append(f"  p={p:<4d} computed={v} counted but not printed")
        out.append(f"  brun partial: computed={self.brun_computed!r} printed={self.brun_printed!r}")
        return out


def _value(report: CensusReport, p: int, column: str) -> int | None:
    for r in report.records:
        if r.p == p:
            return r.n if column == "n" else r.n_over_t
    return None


def reproduce_table(table_id: int) -> TableDiff:
    entry = next((t for t in load_tables() if t["table"] == table_id), None)
    if entry is None:
        raise KeyError(f"no embedded table {table_id}")
    curve = get_curve(entry["curve"])
    report = run_census(curve, entry["x"], t=entry["t"], mode=entry["mode"])
    column = entry["value_column"]
    rows = []
    for row in entry["rows"]:
        got = _value(report, row["p"], column)
        rows.append(RowDiff(row["p"], row["value"], got, row["flag"], got == row["value"], row.get("note", "")))
    printed = {row["p"] for row in entry["rows"]}
    extra = [(r.p, r.n if column == "n" else r.n_over_t) for r in report.counted if r.p not in printed]
    return TableDiff(
        table=table_id,
        curve=entry["curve"],
        t=entry["t"],
        mode=entry["mode"],
        rows=rows,
        extra=extra,
        brun_printed=entry.get("brun_printed"),
        brun_computed=report.brun_partial,
    )


def table_ids() -> list[int]:
    return [t["table"] for t in load_tables()]
