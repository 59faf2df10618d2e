"""Named builders: resolve strings like ``trunc-poly:2^2`` or a JSON path to a structure."""
from __future__ import annotations

import json
import re
from pathlib import Path

from . import hopf, io
from .errors import StructureError, UnknownBuilderError
from .exactla import QQ, FieldSpec

BUILDERS = ("group:<Zn|Sn|GxH|table.json>", "trunc-poly:p^k", "dual:<name>", "poly-window:D",
            "shuffle-window:dimV:D", "tensor-hopf-window:n:D", "<file.json>")


def parse_field(text: str) -> FieldSpec:
    text = text.strip()
    if text in ("Q", "QQ"):
        return QQ
    m = re.fullmatch(r"(?:Fp:|F|GF)(\d+)", text)
    if m:
        try:
            return FieldSpec(int(m.group(1)))
        except ValueError as exc:
            raise UnknownBuilderError(str(exc)) from None
    raise UnknownBuilderError(f"unknown field {text!r}; use Q or Fp:<prime>")


def _group(spec: str) -> hopf.FiniteGroupTable:
    parts = spec.split("x")
    if len(parts) > 1 and all(re.fullmatch(r"[ZS]\d+", p) for p in parts):
        g = _group(parts[0])
        for p in parts[1:]:
            g = hopf.direct_product(g, _group(p))
        return g
    m = re.fullmatch(r"([ZS])(\d+)", spec)
    if m:
        n = int(m.group(2))
        if n < 1:
            raise UnknownBuilderError("group order must be positive")
        return hopf.cyclic_group(n) if m.group(1) == "Z" else hopf.symmetric_group(n)
    path = Path(spec)
    if path.is_file():
        try:
            data = json.loads(path.read_text())
            labels = [str(x) for x in data["elements"]]
            index = {lab: i for i, lab in enumerate(labels)}
            table = [[index[str(x)] if str(x) in index else int(x) for x in row] for row in data["table"]]
        except (ValueError, KeyError, TypeError) as exc:
            raise StructureError(f"bad group table file: {exc}") from None
        return hopf.FiniteGroupTable.from_table(labels, table)
    raise UnknownBuilderError(f"unknown group {spec!r}")


def _ints(parts, n, name):
    if len(parts) != n:
        raise UnknownBuilderError(f"{name} takes {n} parameter(s)")
    try:
        return [int(p) for p in parts]
    except ValueError:
        raise UnknownBuilderError(f"{name} parameters must be integers") from None


def resolve(ref: str, field: FieldSpec = QQ):
    ref = ref.strip()
    kind, _, rest = ref.partition(":")
    if kind == "group" and rest:
        return hopf.group_algebra(_group(rest), field)
    if kind == "trunc-poly" and rest:
        p, _, k = rest.partition("^")
        p, k = _ints([p, k or "1"], 2, "trunc-poly")
        try:
            FieldSpec(p)
        except ValueError:
            raise UnknownBuilderError(f"trunc-poly needs a prime, got {p}") from None
        if k < 1:
            raise UnknownBuilderError("trunc-poly needs k >= 1")
        return hopf.truncated_polynomial_hopf(p, k)
    if kind == "dual" and rest:
        return hopf.dual_hopf(resolve(rest, field))
    if kind == "poly-window":
        (D,) = _ints(rest.split(":"), 1, "poly-window")
        return hopf.polynomial_window(field, D)
    if kind == "shuffle-window":
        v, D = _ints(rest.split(":"), 2, "shuffle-window")
        return hopf.shuffle_window(field, v, D)
    if kind == "tensor-hopf-window":
        n, D = _ints(rest.split(":"), 2, "tensor-hopf-window")
        return hopf.tensor_hopf_window(field, n, D)
    if Path(ref).is_file():
        return io.load(ref)
    raise UnknownBuilderError(f"unknown algebra {ref!r}; known builders: {', '.join(BUILDERS)}")
