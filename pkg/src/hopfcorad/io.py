"""JSON definition files for coalgebras, bialgebras and Hopf algebras."""
from __future__ import annotations

import json
from pathlib import Path

from . import coalg, hopf
from .coalg import Coalgebra
from .errors import StructureError
from .exactla import QQ, FieldSpec, Matrix


def _field(spec) -> FieldSpec:
    if spec == "Q":
        return QQ
    if isinstance(spec, dict) and set(spec) == {"p"}:
        try:
            return FieldSpec(int(spec["p"]))
        except ValueError as exc:
            raise StructureError(str(exc)) from None
    raise StructureError(f"field must be \"Q\" or {{\"p\": prime}}, got {spec!r}")


def _scalar(f: FieldSpec, s):
    try:
        return f.parse(str(s))
    except (ValueError, ZeroDivisionError):
        raise StructureError(f"bad scalar {s!r}") from None


def loads(text: str):
    try:
        data = json.loads(text)
    except ValueError as exc:
        raise StructureError(f"invalid JSON: {exc}") from None
    return from_dict(data)


def load(path: str | Path):
    return loads(Path(path).read_text())


def from_dict(data: dict):
    if not isinstance(data, dict):
        raise StructureError("definition must be a JSON object")
    for key in ("field", "basis", "unit", "comul", "counit"):
        if key not in data:
            raise StructureError(f"missing field {key!r}")
    f = _field(data["field"])
    labels = [str(x) for x in data["basis"]]
    if len(set(labels)) != len(labels) or not labels:
        raise StructureError("basis labels must be distinct and nonempty")
    index = {lab: i for i, lab in enumerate(labels)}
    d = len(labels)

    def idx(lab):
        if lab not in index:
            raise StructureError(f"unknown basis label {lab!r}")
        return index[lab]

    unit_spec = data["unit"]
    if isinstance(unit_spec, str):
        unit = {idx(unit_spec): f.one}
    elif isinstance(unit_spec, list) and len(unit_spec) == d:
        unit = {i: _scalar(f, x) for i, x in enumerate(unit_spec) if _scalar(f, x)}
    else:
        raise StructureError("unit must be a label or a coordinate vector of length dim")

    comul: list = [dict() for _ in range(d)]
    for entry in data["comul"]:
        try:
            src, (l, r), s = entry
        except (TypeError, ValueError):
            raise StructureError(f"bad comul entry {entry!r}") from None
        comul[idx(src)][idx(l) * d + idx(r)] = _scalar(f, s)
    counit = [f.zero] * d
    for entry in data["counit"]:
        try:
            lab, s = entry
        except (TypeError, ValueError):
            raise StructureError(f"bad counit entry {entry!r}") from None
        counit[idx(lab)] = _scalar(f, s)
    degrees = data.get("degrees")
    if degrees is not None and (len(degrees) != d or not all(isinstance(x, int) for x in degrees)):
        raise StructureError("degrees must list one integer per basis element")

    if "mul" not in data:
        c = Coalgebra(f, tuple(labels), Matrix.from_columns(d * d, f, comul),
                      Matrix(1, d, f, {j: {0: x} for j, x in enumerate(counit)}), unit,
                      tuple(degrees) if degrees else None)
        return coalg.validated(c)

    mul: list = [dict() for _ in range(d * d)]
    for entry in data["mul"]:
        try:
            (a, b), out, s = entry
        except (TypeError, ValueError):
            raise StructureError(f"bad mul entry {entry!r}") from None
        mul[idx(a) * d + idx(b)][idx(out)] = _scalar(f, s)
    anti = None
    if "antipode" in data:
        anti = [dict() for _ in range(d)]
        for entry in data["antipode"]:
            try:
                src, (out, s) = entry
            except (TypeError, ValueError):
                raise StructureError(f"bad antipode entry {entry!r}") from None
            anti[idx(src)][idx(out)] = _scalar(f, s)
    return hopf.make_hopf(f, labels, comul, counit, unit, mul, anti, degrees)


def to_dict(x) -> dict:
    c = coalg.as_coalgebra(x)
    f = c.field
    labels = list(c.labels)
    d = len(labels)
    out = {
        "field": "Q" if f.characteristic == 0 else {"p": f.characteristic},
        "basis": labels,
        "unit": [f.format(c.unit.get(i, f.zero)) for i in range(d)],
        "comul": [[labels[j], [labels[k // d], labels[k % d]], f.format(v)]
                  for j in range(d) for k, v in sorted(c.comul.column(j).items())],
        "counit": [[labels[j], f.format(v)] for j in range(d) for v in [c.counit.column(j).get(0)] if v],
    }
    if c.degrees is not None:
        out["degrees"] = list(c.degrees)
    if isinstance(x, hopf.Bialgebra):
        out["mul"] = [[[labels[k // d], labels[k % d]], labels[i], f.format(v)]
                      for k in range(d * d) for i, v in sorted(x.mul.column(k).items())]
        if getattr(x, "antipode", None) is not None:
            out["antipode"] = [[labels[j], [labels[i], f.format(v)]]
                               for j in range(d) for i, v in sorted(x.antipode.column(j).items())]
    return out


def dumps(x) -> str:
    return json.dumps(to_dict(x), indent=2, ensure_ascii=False)
