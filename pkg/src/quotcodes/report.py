"""Verification reports and their JSON / CSV / text serializations."""

from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass, field
from typing import Any, Iterable

MATCH, MISMATCH, NOT_APPLICABLE, SKIPPED = "match", "mismatch", "not-applicable", "skipped"
VERDICTS = (MATCH, MISMATCH, NOT_APPLICABLE, SKIPPED)


@dataclass
class VerificationReport:
    suite: str
    claim: str
    instance: dict
    claimed: Any
    computed: Any
    verdict: str
    witness: dict = field(default_factory=dict)
    note: str = ""
    runtime: float | None = None

    def __post_init__(self):
        if self.verdict not in VERDICTS:
            raise ValueError(f"unknown verdict {self.verdict!r}")

    def to_json(self, *, timings: bool = False) -> dict:
        out = {
            "suite": self.suite,
            "claim": self.claim,
            "instance": self.instance,
            "claimed": self.claimed,
            "computed": self.computed,
            "verdict": self.verdict,
            "witness": self.witness,
        }
        if self.note:
            out["note"] = self.note
        if timings and self.runtime is not None:
            out["runtime"] = round(self.runtime, 3)
        return out


def verdict_of(ok: bool) -> str:
    return MATCH if ok else MISMATCH


def exit_status(reports: Iterable[VerificationReport]) -> int:
    return 2 if any(r.verdict == MISMATCH for r in reports) else 0


def _compact(value) -> str:
    return value if isinstance(value, str) else json.dumps(value, sort_keys=True)


def to_json_text(reports: list[VerificationReport], *, timings: bool = False) -> str:
    return json.dumps([r.to_json(timings=timings) for r in reports], indent=2, sort_keys=True) + "\n"


def to_csv_text(reports: list[VerificationReport], *, timings: bool = False) -> str:
    buf = io.StringIO()
    cols = ["suite", "claim", "instance", "claimed", "computed", "verdict", "note"] + (["runtime"] if timings else [])
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(cols)
    for r in reports:
        row = [r.suite, r.claim, _compact(r.instance), _compact(r.claimed), _compact(r.computed), r.verdict, r.note]
        if timings:
            row.append("" if r.runtime is None else f"{r.runtime:.3f}")
        w.writerow(row)
    return buf.getvalue()


def to_txt(reports: list[VerificationReport], *, timings: bool = False) -> str:
    lines = []
    for r in reports:
        inst = " ".join(f"{k}={_compact(v)}" for k, v in r.instance.items())
        line = f"[{r.verdict}] {r.suite} {r.claim} ({inst}): claimed {_compact(r.claimed)}, computed {_compact(r.computed)}"
        if timings and r.runtime is not None:
            line += f" [{r.runtime:.2f}s]"
        if r.note:
            line += f"  # {r.note}"
        lines.append(line)
    counts = {v: sum(r.verdict == v for r in reports) for v in VERDICTS}
    lines.append("summary: " + ", ".join(f"{v} {c}" for v, c in counts.items()))
    return "\n".join(lines) + "\n"


FORMATTERS = {"json": to_json_text, "csv": to_csv_text, "txt": to_txt}
