"""Basis-presented coaugmented coalgebras and their coradical filtrations."""
from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from itertools import combinations
from typing import Mapping, Sequence

from .errors import AxiomError, DimensionError, PreconditionError, StructureError
from .exactla import (
    FieldSpec, Matrix, Subspace, TensorIndex, apply_on_factor, axpy, check_same_field,
    kernel, tensor_subspace, tensor_vectors, vec_coerce, vstack,
)


@dataclass(frozen=True)
class TruncationWindow:
    max_degree: int
    comultiplication_exact: bool = True
    multiplication_exact: bool = False

    def __post_init__(self):
        if not self.comultiplication_exact:
            raise StructureError("a window must be exact for the comultiplication")
        if self.max_degree < 0:
            raise StructureError("window degree must be nonnegative")


@dataclass(frozen=True, eq=False)
class Coalgebra:
    field: FieldSpec
    labels: tuple
    comul: Matrix
    counit: Matrix
    unit: Mapping
    degrees: tuple | None = None
    window: TruncationWindow | None = None
    _memo: dict = dc_field(default_factory=dict, repr=False, compare=False)

    @property
    def dim(self) -> int:
        return len(self.labels)

    @property
    def coalgebra(self) -> "Coalgebra":
        return self

    def label_of(self, i: int) -> str:
        return self.labels[i]

    def index_of(self, label: str) -> int:
        try:
            return self.labels.index(label)
        except ValueError:
            raise StructureError(f"unknown basis label {label!r}") from None


def as_coalgebra(x) -> Coalgebra:
    return x.coalgebra


@dataclass
class ValidationReport:
    failures: list = dc_field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.failures

    def fail(self, axiom: str, witness: str):
        self.failures.append((axiom, witness))

    def __bool__(self):
        return self.ok

    def __str__(self):
        if self.ok:
            return "all axioms hold"
        return "; ".join(f"{a} fails at {w}" for a, w in self.failures)


def check_structure(c: Coalgebra):
    d = c.dim
    if len(set(c.labels)) != d:
        raise StructureError("basis labels must be distinct")
    if (c.comul.rows, c.comul.cols) != (d * d, d):
        raise StructureError(f"comultiplication must be {d*d}x{d}, got {c.comul.rows}x{c.comul.cols}")
    if (c.counit.rows, c.counit.cols) != (1, d):
        raise StructureError(f"counit must be 1x{d}")
    if any(not 0 <= k < d for k in c.unit):
        raise StructureError("unit vector out of range")
    if c.degrees is not None and len(c.degrees) != d:
        raise StructureError("degrees length must equal dimension")
    for m in (c.comul, c.counit):
        check_same_field(m.field, c.field)


def counit_value(c: Coalgebra, v: Mapping):
    return c.counit.apply(v).get(0, c.field.zero)


def validate(c: Coalgebra) -> ValidationReport:
    check_structure(c)
    d = c.dim
    f = c.field
    rep = ValidationReport()
    for b in range(d):
        db = c.comul.column(b)
        lhs = apply_on_factor(db, 1, d, d, c.comul)
        rhs = apply_on_factor(db, d, d, 1, c.comul)
        if lhs != rhs:
            rep.fail("coassociativity", c.labels[b])
        if apply_on_factor(db, 1, d, d, c.counit) != {b: f.one}:
            rep.fail("counit (left)", c.labels[b])
        if apply_on_factor(db, d, d, 1, c.counit) != {b: f.one}:
            rep.fail("counit (right)", c.labels[b])
    unit = dict(c.unit)
    if c.comul.apply(unit) != tensor_vectors(unit, unit, d, f) or counit_value(c, unit) != f.one:
        rep.fail("coaugmentation", "1")
    if c.degrees is not None:
        deg = c.degrees
        if any(deg[k] != 0 for k in unit):
            rep.fail("grading", "1")
        for b in range(d):
            for k in c.comul.column(b):
                i, j = divmod(k, d)
                if deg[i] + deg[j] != deg[b]:
                    rep.fail("grading", c.labels[b])
                    break
    return rep


def validated(c):
    rep = validate(as_coalgebra(c))
    if not rep.ok:
        raise AxiomError(f"coalgebra axioms fail: {rep}", rep)
    return c


def e_map(c: Coalgebra) -> Matrix:
    """id - eta∘epsilon."""
    d = c.dim
    f = c.field
    cols = []
    for b in range(d):
        v = {b: f.one}
        eps = c.counit.column(b).get(0)
        if eps:
            axpy(v, f.neg(eps), c.unit, f)
        cols.append(v)
    return Matrix.from_columns(d, f, cols)


def _memo(c: Coalgebra, key, make):
    m = c._memo
    if key not in m:
        m[key] = make()
    return m[key]


def iterated_comul(c: Coalgebra, n: int) -> Matrix:
    """Left-iterated comultiplication H -> H^{⊗n}."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    d = c.dim
    if n == 0:
        return c.counit
    if n == 1:
        return Matrix.identity(d, c.field)

    def make():
        prev = iterated_comul(c, n - 1)
        post = d ** (n - 2)
        cols = {j: apply_on_factor(col, 1, d, post, c.comul) for j, col in prev.columns()}
        return Matrix(d ** n, d, c.field, cols)

    return _memo(c, ("comul", n), make)


def right_iterated_comul(c: Coalgebra, n: int) -> Matrix:
    """Right bracketing (id^{⊗(n-2)}⊗Δ)∘...; equals iterated_comul by coassociativity."""
    if n <= 1:
        return iterated_comul(c, n)
    d = c.dim
    m = Matrix.identity(d, c.field)
    for k in range(1, n):
        m = Matrix(d ** (k + 1), d, c.field,
                   {j: apply_on_factor(col, d ** (k - 1), d, 1, c.comul) for j, col in m.columns()})
    return m


def delta_map(c: Coalgebra, n: int) -> Matrix:
    """delta^n = e^{⊗n}∘Δ^{(n)}, built as (δ²⊗id)∘δ^{n-1} for n ≥ 3."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    d = c.dim
    if n == 0:
        return c.counit
    if n == 1:
        return e_map(c)
    if n == 2:
        return _memo(c, ("delta", 2), lambda: delta_map_direct(c, 2))

    def make():
        prev = delta_map(c, n - 1)
        d2 = delta_map(c, 2)
        post = d ** (n - 2)
        cols = {j: apply_on_factor(col, 1, d, post, d2) for j, col in prev.columns()}
        return Matrix(d ** n, d, c.field, cols)

    return _memo(c, ("delta", n), make)


def delta_map_direct(c: Coalgebra, n: int) -> Matrix:
    """delta^n straight from the definition e^{⊗n}∘Δ^{(n)}."""
    if n <= 1:
        return delta_map(c, n)
    d = c.dim
    e = e_map(c)
    m = iterated_comul(c, n)
    cols = {}
    for j, col in m.columns():
        v = col
        for pos in range(n):
            v = apply_on_factor(v, d ** pos, d, d ** (n - 1 - pos), e)
        cols[j] = v
    return Matrix(d ** n, d, c.field, cols)


def coradical_term(c: Coalgebra, n: int) -> Subspace:
    return _memo(c, ("P", n), lambda: kernel(delta_map(c, n + 1)))


def coradical_filtration(c: Coalgebra, n_max: int) -> list:
    return [coradical_term(c, n) for n in range(n_max + 1)]


def primitives(c: Coalgebra) -> Subspace:
    return _memo(c, ("prim",), lambda: kernel(vstack([c.counit, delta_map(c, 2)])))


def conilpotency_degree(c: Coalgebra) -> int | None:
    """Least n with P_n = H, or None when the chain stalls below H."""
    prev = None
    for n in range(c.dim + 1):
        p = coradical_term(c, n)
        if p.is_full():
            return n
        if prev is not None and p == prev:
            return None
        prev = p
    return None


def is_subcoalgebra(c: Coalgebra, s: Subspace) -> bool:
    if s.ambient != c.dim:
        raise DimensionError("subspace must live in H")
    ss = tensor_subspace(s, s)
    return all(ss.contains(c.comul.apply(v)) for v in s.basis)


def trivial_coalgebra(field: FieldSpec) -> Coalgebra:
    one = field.one
    return Coalgebra(field, ("1",), Matrix(1, 1, field, {0: {0: one}}), Matrix(1, 1, field, {0: {0: one}}),
                     {0: one}, degrees=(0,))


def tensor_comul_columns(d1: int, d2: int, cols1: Sequence[Mapping], cols2: Sequence[Mapping], field) -> list:
    """Columns of (id⊗swap⊗id)∘(Δ1⊗Δ2) in the basis of H1⊗H2."""
    d = d1 * d2
    out = []
    p = field.characteristic
    for a in range(d1):
        for b in range(d2):
            v: dict = {}
            for k1, x in cols1[a].items():
                x1, y1 = divmod(k1, d1)
                for k2, y in cols2[b].items():
                    x2, y2 = divmod(k2, d2)
                    key = (x1 * d2 + x2) * d + (y1 * d2 + y2)
                    z = v.get(key, 0) + x * y
                    if p:
                        z %= p
                    if z:
                        v[key] = z
                    else:
                        v.pop(key, None)
            out.append(v)
    return out


def tensor(c1: Coalgebra, c2: Coalgebra, check: bool = True) -> Coalgebra:
    c1, c2 = as_coalgebra(c1), as_coalgebra(c2)
    f = check_same_field(c1.field, c2.field)
    d1, d2 = c1.dim, c2.dim
    comul = tensor_comul_columns(d1, d2, [c1.comul.column(a) for a in range(d1)],
                                 [c2.comul.column(b) for b in range(d2)], f)
    counit = _tensor_counit(c1, c2)
    labels = tuple(f"{x}⊗{y}" for x in c1.labels for y in c2.labels)
    degrees = None
    if c1.degrees is not None and c2.degrees is not None:
        degrees = tuple(x + y for x in c1.degrees for y in c2.degrees)
    out = Coalgebra(f, labels, Matrix.from_columns(d1 * d2 * d1 * d2, f, comul), Matrix(1, d1 * d2, f, counit),
                    tensor_vectors(c1.unit, c2.unit, d2, f), degrees)
    return validated(out) if check else out


def _tensor_counit(c1: Coalgebra, c2: Coalgebra) -> dict:
    f = c1.field
    d2 = c2.dim
    out = {}
    for a in range(c1.dim):
        x = c1.counit.column(a).get(0)
        if not x:
            continue
        for b in range(d2):
            y = c2.counit.column(b).get(0)
            if y:
                out[a * d2 + b] = {0: f.mul(x, y)}
    return out


def tensor_power(c: Coalgebra, k: int, check: bool = False) -> Coalgebra:
    c = as_coalgebra(c)
    out = trivial_coalgebra(c.field)
    if k == 0:
        return out
    out = c
    for _ in range(k - 1):
        out = tensor(out, c, check=check)
    return out


def insertion(c: Coalgebra, n: int, S: Sequence[int], w: Mapping, check_reduced: bool = True) -> dict:
    """Place the factors of w at the (1-based) positions S and 1_H elsewhere."""
    S = list(S)
    if S != sorted(set(S)) or any(not 1 <= s <= n for s in S):
        raise PreconditionError("S must be a sorted subset of 1..n")
    d = c.dim
    k = len(S)
    f = c.field
    if any(not 0 <= idx < d ** k for idx in w):
        raise DimensionError(f"vector does not live in H^{{⊗{k}}}")
    if check_reduced and k:
        e = e_map(c)
        v = dict(w)
        for pos in range(k):
            v = apply_on_factor(v, d ** pos, d, d ** (k - 1 - pos), e)
        if v != vec_coerce(w, f):
            raise PreconditionError("w must lie in Ker(ε)^{⊗|S|}")
    ti = TensorIndex([d] * k)
    out: dict = {}
    unit = list(c.unit.items())
    for idx, x in w.items():
        parts = ti.decode(idx) if k else ()
        # expand over unit coordinates at the positions outside S
        acc = {0: x}
        it = iter(parts)
        for pos in range(1, n + 1):
            if pos in S:
                i = next(it)
                acc = {key * d + i: y for key, y in acc.items()}
            else:
                nxt: dict = {}
                for key, y in acc.items():
                    for u, z in unit:
                        nxt[key * d + u] = f.mul(y, z)
                acc = nxt
        axpy(out, f.one, acc, f)
    return out


def delta_decomposition_check(c: Coalgebra, n: int, a: Mapping) -> bool:
    f = c.field
    a = vec_coerce(a, f)
    lhs = iterated_comul(c, n).apply(a)
    rhs: dict = {}
    for k in range(n + 1):
        dk = delta_map(c, k).apply(a)
        for S in combinations(range(1, n + 1), k):
            axpy(rhs, f.one, insertion(c, n, S, dk, check_reduced=False), f)
    return lhs == rhs


def format_vector(labels: Sequence[str], v: Mapping, field: FieldSpec, arity: int = 1) -> str:
    """Human readable form like ``t^2⊗t + t⊗t^2``."""
    if not v:
        return "0"
    d = len(labels)
    ti = TensorIndex([d] * arity)
    terms = []
    for k in sorted(v):
        x = v[k]
        name = "⊗".join(labels[i] for i in ti.decode(k)) if arity else "1"
        coef = field.format(x)
        if coef == "1":
            terms.append(name)
        elif coef == "-1":
            terms.append("-" + name)
        else:
            terms.append(f"{coef}*{name}")
    return " + ".join(terms).replace("+ -", "- ")
