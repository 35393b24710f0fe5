"""Pass/fail reports with re-checkable counterexample witnesses.

Checks never raise on a violated inequality: violations are recorded as
witnesses carrying the offending inputs and the signed margin of the
inequality, so any witness can be replayed standalone and must reproduce
its margin. Witnesses are kept in a canonical order, which makes report
merging associative and deterministic.
"""

from __future__ import annotations

import csv
from dataclasses import dataclass, field, replace
from pathlib import Path
from typing import Iterable, Optional, Sequence

import numpy as np

PASS = "pass"
FAIL = "fail"
HYPOTHESIS_UNMET = "hypothesis-unmet"
CAVEAT = "caveat"

CSV_HEADER = ["check", "status", "samples", "mode", "witness", "lhs", "bound", "margin", "notes"]

_MAX_RENDERED_WITNESSES = 8


def format_value(value) -> str:
    """Deterministic compact rendering used in witness keys and reports."""
    if isinstance(value, np.ndarray):
        return (f"grid(nodes={value.size}, min={float(value.min())!r}, "
                f"max={float(value.max())!r})")
    if isinstance(value, (bool, np.bool_)):
        return repr(bool(value))
    if isinstance(value, (int, np.integer)):
        return repr(int(value))
    if isinstance(value, (float, np.floating)):
        return repr(float(value))
    return repr(value)


def format_inputs(inputs: Sequence) -> str:
    return "(" + ", ".join(format_value(v) for v in inputs) + ")"


@dataclass(frozen=True)
class Witness:
    """One counterexample: the inputs, the violated inequality rendered as
    text, and the signed margin by which it failed."""

    check: str
    inputs: tuple
    margin: float
    detail: str
    lhs: Optional[float] = None
    bound: Optional[float] = None

    def render(self) -> str:
        return f"{self.check} at {format_inputs(self.inputs)}: {self.detail}"

    def sort_key(self) -> tuple[str, str, str]:
        return (self.check, format_inputs(self.inputs), repr(float(self.margin)))


@dataclass
class VerificationReport:
    name: str
    status: str
    witnesses: list[Witness] = field(default_factory=list)
    samples: int = 0
    mode: str = "exact"            # "exact" or "falsification"
    tolerance: float = 0.0
    notes: tuple[str, ...] = ()

    @property
    def passed(self) -> bool:
        return self.status == PASS

    def canonical(self) -> "VerificationReport":
        ordered = sorted(self.witnesses, key=Witness.sort_key)
        return replace(self, witnesses=ordered)


def make_report(name: str, witnesses: Iterable[Witness], samples: int, *,
                mode: str = "exact", tolerance: float = 0.0,
                notes: tuple[str, ...] = ()) -> VerificationReport:
    ordered = sorted(witnesses, key=Witness.sort_key)
    status = FAIL if ordered else PASS
    return VerificationReport(name=name, status=status, witnesses=ordered,
                              samples=samples, mode=mode, tolerance=tolerance,
                              notes=notes)


def merge_reports(first: VerificationReport, *rest: VerificationReport) -> VerificationReport:
    """Combine reports of the same check over partitioned sample sets.

    The merge is associative and order-independent: witnesses are re-sorted
    canonically and statuses combine as fail > hypothesis-unmet > pass.
    """
    merged = first.canonical()
    for other in rest:
        if other.name != merged.name:
            raise ValueError(f"cannot merge reports {merged.name!r} and {other.name!r}")
        statuses = {merged.status, other.status}
        if FAIL in statuses:
            status = FAIL
        elif HYPOTHESIS_UNMET in statuses:
            status = HYPOTHESIS_UNMET
        else:
            status = PASS
        notes = merged.notes + tuple(n for n in other.notes if n not in merged.notes)
        merged = VerificationReport(
            name=merged.name, status=status,
            witnesses=sorted(merged.witnesses + other.witnesses, key=Witness.sort_key),
            samples=merged.samples + other.samples,
            mode=merged.mode, tolerance=max(merged.tolerance, other.tolerance),
            notes=notes)
    return merged


def render_text(reports: Sequence[VerificationReport],
                header_lines: Sequence[str] = ()) -> str:
    """Human-readable report: one status line per check plus witnesses."""
    lines: list[str] = list(header_lines)
    if lines:
        lines.append("")
    for rep in reports:
        rep = rep.canonical()
        lines.append(f"[{rep.status.upper():>6}] {rep.name}  "
                     f"(samples={rep.samples}, mode={rep.mode})")
        for note in rep.notes:
            lines.append(f"         note: {note}")
        shown = rep.witnesses[:_MAX_RENDERED_WITNESSES]
        for w in shown:
            lines.append(f"         witness {w.render()} [margin={format_value(w.margin)}]")
        hidden = len(rep.witnesses) - len(shown)
        if hidden > 0:
            lines.append(f"         ... and {hidden} more witnesses")
    counts: dict[str, int] = {}
    for rep in reports:
        counts[rep.status] = counts.get(rep.status, 0) + 1
    summary = ", ".join(f"{v} {k}" for k, v in sorted(counts.items()))
    lines.append("")
    lines.append(f"summary: {len(reports)} checks ({summary})")
    return "\n".join(lines) + "\n"


def report_rows(reports: Sequence[VerificationReport]) -> list[list[str]]:
    """One CSV row per check: first canonical witness fields, if any."""
    rows = []
    for rep in reports:
        rep = rep.canonical()
        first = rep.witnesses[0] if rep.witnesses else None
        rows.append([
            rep.name,
            rep.status,
            str(rep.samples),
            rep.mode,
            f"{first.check} {format_inputs(first.inputs)}" if first else "",
            format_value(first.lhs) if first is not None and first.lhs is not None else "",
            format_value(first.bound) if first is not None and first.bound is not None else "",
            format_value(first.margin) if first else "",
            "; ".join(rep.notes),
        ])
    return rows


def write_report_csv(path: str | Path, reports: Sequence[VerificationReport],
                     extra_rows: Sequence[Sequence[str]] = ()) -> None:
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(CSV_HEADER)
        for row in report_rows(reports):
            writer.writerow(row)
        for row in extra_rows:
            writer.writerow(list(row))
