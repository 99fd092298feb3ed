"""Verification records and their serializations."""
from __future__ import annotations

import csv
import io
import json
from dataclasses import asdict, dataclass, field
from typing import Optional

FIELDS = ("group", "p", "character", "degree", "dim", "method", "status")

# exit codes
EXIT_OK, EXIT_FAIL, EXIT_REFUSED, EXIT_CAP, EXIT_INPUT = 0, 1, 2, 3, 4


@dataclass(frozen=True)
class Record:
    group: str
    p: Optional[int]
    character: str
    degree: Optional[int]
    dim: Optional[int]
    method: str
    status: str  # pass | fail | info | refused | unverified

    def as_dict(self) -> dict:
        return asdict(self)


@dataclass
class Report:
    records: list = field(default_factory=list)
    notes: list = field(default_factory=list)

    def add(self, *records: Record) -> None:
        self.records.extend(records)

    def extend(self, other: "Report") -> None:
        self.records.extend(other.records)
        self.notes.extend(other.notes)

    @property
    def exit_code(self) -> int:
        st = {r.status for r in self.records}
        if "fail" in st:
            return EXIT_FAIL
        if "refused" in st:
            return EXIT_REFUSED
        if "unverified" in st:
            return EXIT_CAP
        return EXIT_OK

    @property
    def ok(self) -> bool:
        return self.exit_code == EXIT_OK

    def render(self, fmt: str = "json") -> str:
        if fmt == "json":
            return render_json(self)
        if fmt == "md":
            return render_markdown(self)
        if fmt == "csv":
            return render_csv(self)
        raise ValueError(f"unknown format {fmt!r}")


def _cell(v) -> str:
    return "" if v is None else str(v)


def render_json(rep: Report) -> str:
    lines = [json.dumps(r.as_dict(), sort_keys=False) for r in rep.records]
    lines += [json.dumps({"note": n}) for n in rep.notes]
    return "\n".join(lines) + ("\n" if lines else "")


def render_markdown(rep: Report) -> str:
    out = ["| " + " | ".join(FIELDS) + " |", "|" + "---|" * len(FIELDS)]
    for r in rep.records:
        out.append("| " + " | ".join(_cell(getattr(r, f)) for f in FIELDS) + " |")
    out += [f"\n{n}" for n in rep.notes]
    return "\n".join(out) + "\n"


def render_csv(rep: Report) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(FIELDS)
    for r in rep.records:
        w.writerow([_cell(getattr(r, f)) for f in FIELDS])
    return buf.getvalue()


def render_table(header, rows, fmt: str) -> str:
    """Generic table in one of the report formats."""
    if fmt == "json":
        return "".join(json.dumps(dict(zip(header, row))) + "\n" for row in rows)
    if fmt == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(header)
        w.writerows(rows)
        return buf.getvalue()
    if fmt == "md":
        out = ["| " + " | ".join(header) + " |", "|" + "---|" * len(header)]
        out += ["| " + " | ".join(str(c) for c in row) + " |" for row in rows]
        return "\n".join(out) + "\n"
    raise ValueError(f"unknown format {fmt!r}")
