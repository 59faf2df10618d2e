"""Command reports and their text, JSON and CSV renderings."""
from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass, field

SCHEMA = 1
STATUSES = ("pass", "fail", "computed")


@dataclass
class Report:
    command: str
    inputs: dict
    checks: list = field(default_factory=list)
    tables: dict = field(default_factory=dict)

    def check(self, check_id: str, status, detail: str = "", witness: str | None = None):
        if isinstance(status, bool):
            status = "pass" if status else "fail"
        if status not in STATUSES:
            raise ValueError(f"bad status {status!r}")
        self.checks.append({"id": check_id, "status": status, "detail": detail, "witness": witness})

    def table(self, name: str, columns: list, rows: list):
        self.tables[name] = {"columns": columns, "rows": rows}

    @property
    def ok(self) -> bool:
        return all(c["status"] != "fail" for c in self.checks)

    def to_dict(self) -> dict:
        return {
            "schema": SCHEMA,
            "command": self.command,
            "inputs": self.inputs,
            "ok": self.ok,
            "checks": sorted(self.checks, key=lambda c: c["id"]),
            "tables": {k: self.tables[k] for k in sorted(self.tables)},
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, sort_keys=True, ensure_ascii=False)

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["section", "name", "key", "value"])
        for k in sorted(self.inputs):
            w.writerow(["input", k, "", _cell(self.inputs[k])])
        for c in sorted(self.checks, key=lambda c: c["id"]):
            w.writerow(["check", c["id"], c["status"], c["witness"] or c["detail"]])
        for name in sorted(self.tables):
            t = self.tables[name]
            for r in t["rows"]:
                key = _cell(r[0])
                for col, val in zip(t["columns"][1:], r[1:]):
                    w.writerow([f"table:{name}", col, key, _cell(val)])
        return buf.getvalue()

    def to_text(self) -> str:
        lines = [f"{self.command}: " + ", ".join(f"{k}={_cell(v)}" for k, v in sorted(self.inputs.items()))]
        for name in sorted(self.tables):
            t = self.tables[name]
            lines.append(f"\n[{name}]")
            widths = [max(len(str(c)), *(len(_cell(r[i])) for r in t["rows"])) if t["rows"] else len(str(c))
                      for i, c in enumerate(t["columns"])]
            lines.append("  ".join(str(c).ljust(w) for c, w in zip(t["columns"], widths)))
            for r in t["rows"]:
                lines.append("  ".join(_cell(v).ljust(w) for v, w in zip(r, widths)))
        if self.checks:
            lines.append("")
        for c in sorted(self.checks, key=lambda c: c["id"]):
            extra = c["witness"] or c["detail"]
            lines.append(f"{c['status'].upper():8} {c['id']}" + (f"  ({extra})" if extra else ""))
        return "\n".join(lines) + "\n"


def _cell(v) -> str:
    if v is None:
        return "-"
    if isinstance(v, bool):
        return "yes" if v else "no"
    if isinstance(v, (list, tuple)):
        return " ".join(_cell(x) for x in v)
    return str(v)
