"""Exact sparse linear algebra over Q and F_p on tensor-indexed coordinate spaces.

Vectors are plain dicts ``{index: scalar}`` holding no zeros.  Rational
scalars are ``fractions.Fraction``; residues mod p are ints in ``range(p)``.
Tensor indices are mixed-radix with the leftmost factor most significant.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import prod
from typing import Iterable, Mapping, Sequence

from .errors import DimensionError, FieldMismatchError

Vector = dict


def _is_prime(p: int) -> bool:
    if p < 2:
        return False
    i = 2
    while i * i <= p:
        if p % i == 0:
            return False
        i += 1
    return True


@dataclass(frozen=True)
class FieldSpec:
    characteristic: int

    def __post_init__(self):
        c = self.characteristic
        if not isinstance(c, int) or (c != 0 and not _is_prime(c)):
            raise ValueError(f"characteristic must be 0 or a prime, got {c!r}")

    @property
    def zero(self):
        return Fraction(0) if self.characteristic == 0 else 0

    @property
    def one(self):
        return Fraction(1) if self.characteristic == 0 else 1

    def __call__(self, x):
        """Coerce an int, Fraction or string into a scalar of this field."""
        p = self.characteristic
        if isinstance(x, str):
            return self.parse(x)
        if p == 0:
            return Fraction(x)
        if isinstance(x, Fraction):
            return (x.numerator * pow(x.denominator, -1, p)) % p
        return int(x) % p

    def add(self, a, b):
        return a + b if self.characteristic == 0 else (a + b) % self.characteristic

    def sub(self, a, b):
        return a - b if self.characteristic == 0 else (a - b) % self.characteristic

    def mul(self, a, b):
        return a * b if self.characteristic == 0 else (a * b) % self.characteristic

    def neg(self, a):
        return -a if self.characteristic == 0 else (-a) % self.characteristic

    def inv(self, a):
        if not a:
            raise ZeroDivisionError("inverse of zero")
        if self.characteristic == 0:
            return 1 / Fraction(a)
        return pow(a, -1, self.characteristic)

    def div(self, a, b):
        return self.mul(a, self.inv(b))

    def parse(self, s: str):
        s = s.strip()
        if "/" in s:
            num, den = s.split("/", 1)
            return self(Fraction(int(num), int(den)))
        return self(int(s))

    def format(self, a) -> str:
        if self.characteristic == 0:
            a = Fraction(a)
            return str(a.numerator) if a.denominator == 1 else f"{a.numerator}/{a.denominator}"
        return str(int(a))

    def __str__(self):
        return "Q" if self.characteristic == 0 else f"F{self.characteristic}"


QQ = FieldSpec(0)


def GF(p: int) -> FieldSpec:
    return FieldSpec(p)


def check_same_field(*fields: FieldSpec) -> FieldSpec:
    first = fields[0]
    for f in fields[1:]:
        if f != first:
            raise FieldMismatchError(f"field mismatch: {first} vs {f}")
    return first


# ---------------------------------------------------------------- vectors

def axpy(v: dict, c, w: Mapping, field: FieldSpec) -> dict:
    """In place ``v += c*w``; returns v."""
    if not c:
        return v
    p = field.characteristic
    if p:
        for k, x in w.items():
            y = (v.get(k, 0) + c * x) % p
            if y:
                v[k] = y
            else:
                v.pop(k, None)
    else:
        for k, x in w.items():
            y = v.get(k, 0) + c * x
            if y:
                v[k] = y
            else:
                v.pop(k, None)
    return v


def vec_scale(v: Mapping, c, field: FieldSpec) -> dict:
    if not c:
        return {}
    return {k: field.mul(c, x) for k, x in v.items()}


def vec_add(v: Mapping, w: Mapping, field: FieldSpec) -> dict:
    return axpy(dict(v), field.one, w, field)


def vec_sub(v: Mapping, w: Mapping, field: FieldSpec) -> dict:
    return axpy(dict(v), field.neg(field.one), w, field)


def vec_from_dense(values: Sequence, field: FieldSpec) -> dict:
    out = {}
    for i, x in enumerate(values):
        x = field(x)
        if x:
            out[i] = x
    return out


def vec_to_dense(v: Mapping, dim: int, field: FieldSpec) -> list:
    out = [field.zero] * dim
    for k, x in v.items():
        out[k] = x
    return out


def tensor_vectors(v: Mapping, w: Mapping, dim_w: int, field: FieldSpec) -> dict:
    out = {}
    for i, x in v.items():
        for j, y in w.items():
            out[i * dim_w + j] = field.mul(x, y)
    return out


@dataclass(frozen=True)
class TensorIndex:
    dims: tuple

    def __init__(self, dims: Iterable[int]):
        object.__setattr__(self, "dims", tuple(int(d) for d in dims))

    @property
    def arity(self) -> int:
        return len(self.dims)

    @property
    def size(self) -> int:
        return prod(self.dims)

    def encode(self, idx: Sequence[int]) -> int:
        if len(idx) != len(self.dims):
            raise DimensionError("index arity mismatch")
        flat = 0
        for i, d in zip(idx, self.dims):
            if not 0 <= i < d:
                raise DimensionError(f"index {i} out of range {d}")
            flat = flat * d + i
        return flat

    def decode(self, flat: int) -> tuple:
        if not 0 <= flat < self.size:
            raise DimensionError(f"flat index {flat} out of range")
        out = []
        for d in reversed(self.dims):
            flat, r = divmod(flat, d)
            out.append(r)
        return tuple(reversed(out))


# ---------------------------------------------------------------- matrices

class Matrix:
    """Sparse matrix stored by columns; never holds explicit zeros."""

    __slots__ = ("rows", "cols", "field", "_cols")

    def __init__(self, rows: int, cols: int, field: FieldSpec, columns: Mapping[int, Mapping] | None = None):
        self.rows = rows
        self.cols = cols
        self.field = field
        data = {}
        for j, col in (columns or {}).items():
            if not 0 <= j < cols:
                raise DimensionError(f"column {j} out of range {cols}")
            c = {}
            for i, x in col.items():
                if not 0 <= i < rows:
                    raise DimensionError(f"row {i} out of range {rows}")
                x = field(x)
                if x:
                    c[i] = x
            if c:
                data[j] = c
        self._cols = data

    @classmethod
    def _raw(cls, rows, cols, field, data):
        m = cls.__new__(cls)
        m.rows, m.cols, m.field = rows, cols, field
        m._cols = {j: c for j, c in data.items() if c}
        return m

    @classmethod
    def from_entries(cls, rows, cols, field, entries: Mapping[tuple, object]) -> "Matrix":
        data: dict = {}
        for (i, j), x in entries.items():
            data.setdefault(j, {})[i] = x
        return cls(rows, cols, field, data)

    @classmethod
    def from_dense(cls, dense: Sequence[Sequence], field: FieldSpec, cols: int | None = None) -> "Matrix":
        rows = len(dense)
        if cols is None:
            cols = len(dense[0]) if rows else 0
        data: dict = {}
        for i, r in enumerate(dense):
            if len(r) != cols:
                raise DimensionError("ragged dense matrix")
            for j, x in enumerate(r):
                data.setdefault(j, {})[i] = x
        return cls(rows, cols, field, data)

    @classmethod
    def from_columns(cls, rows: int, field: FieldSpec, columns: Sequence[Mapping]) -> "Matrix":
        return cls(rows, len(columns), field, {j: c for j, c in enumerate(columns)})

    @classmethod
    def identity(cls, n: int, field: FieldSpec) -> "Matrix":
        return cls._raw(n, n, field, {i: {i: field.one} for i in range(n)})

    @classmethod
    def zero(cls, rows: int, cols: int, field: FieldSpec) -> "Matrix":
        return cls._raw(rows, cols, field, {})

    def column(self, j: int) -> dict:
        return dict(self._cols.get(j, {}))

    def columns(self):
        return self._cols.items()

    def entries(self) -> dict:
        return {(i, j): x for j, c in self._cols.items() for i, x in c.items()}

    def nnz(self) -> int:
        return sum(len(c) for c in self._cols.values())

    def to_dense(self) -> list:
        out = [[self.field.zero] * self.cols for _ in range(self.rows)]
        for j, c in self._cols.items():
            for i, x in c.items():
                out[i][j] = x
        return out

    def apply(self, v: Mapping) -> dict:
        out: dict = {}
        for j, x in v.items():
            c = self._cols.get(j)
            if c:
                axpy(out, x, c, self.field)
        return out

    def __matmul__(self, other: "Matrix") -> "Matrix":
        if self.cols != other.rows:
            raise DimensionError(f"cannot compose {self.rows}x{self.cols} with {other.rows}x{other.cols}")
        check_same_field(self.field, other.field)
        return Matrix._raw(self.rows, other.cols, self.field,
                           {j: self.apply(c) for j, c in other._cols.items()})

    def _combine(self, other: "Matrix", c) -> "Matrix":
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise DimensionError("shape mismatch")
        check_same_field(self.field, other.field)
        data = {j: dict(col) for j, col in self._cols.items()}
        for j, col in other._cols.items():
            data[j] = axpy(data.get(j, {}), c, col, self.field)
        return Matrix._raw(self.rows, self.cols, self.field, data)

    def __add__(self, other: "Matrix") -> "Matrix":
        return self._combine(other, self.field.one)

    def __sub__(self, other: "Matrix") -> "Matrix":
        return self._combine(other, self.field.neg(self.field.one))

    def scale(self, c) -> "Matrix":
        c = self.field(c)
        return Matrix._raw(self.rows, self.cols, self.field,
                           {j: vec_scale(col, c, self.field) for j, col in self._cols.items()})

    def transpose(self) -> "Matrix":
        data: dict = {}
        for j, c in self._cols.items():
            for i, x in c.items():
                data.setdefault(i, {})[j] = x
        return Matrix._raw(self.cols, self.rows, self.field, data)

    def row_vectors(self) -> list:
        t = self.transpose()
        return [t.column(i) for i in range(self.rows)]

    def __eq__(self, other):
        if not isinstance(other, Matrix):
            return NotImplemented
        return (self.rows, self.cols, self.field, self._cols) == (other.rows, other.cols, other.field, other._cols)

    def __hash__(self):
        return hash((self.rows, self.cols, self.nnz()))

    def __repr__(self):
        return f"Matrix({self.rows}x{self.cols}, nnz={self.nnz()}, {self.field})"


def vstack(mats: Sequence[Matrix]) -> Matrix:
    cols = mats[0].cols
    field = check_same_field(*(m.field for m in mats))
    data: dict = {}
    offset = 0
    for m in mats:
        if m.cols != cols:
            raise DimensionError("vstack column mismatch")
        for j, c in m.columns():
            dst = data.setdefault(j, {})
            for i, x in c.items():
                dst[i + offset] = x
        offset += m.rows
    return Matrix._raw(offset, cols, field, data)


def kronecker(a: Matrix, b: Matrix) -> Matrix:
    field = check_same_field(a.field, b.field)
    data: dict = {}
    for ja, ca in a.columns():
        for jb, cb in b.columns():
            data[ja * b.cols + jb] = tensor_vectors(ca, cb, b.rows, field)
    return Matrix._raw(a.rows * b.rows, a.cols * b.cols, field, data)


def kronecker_all(mats: Sequence[Matrix], field: FieldSpec) -> Matrix:
    out = Matrix.identity(1, field)
    for m in mats:
        out = kronecker(out, m)
    return out


def apply_on_factor(v: Mapping, pre: int, d_in: int, post: int, m: Matrix) -> dict:
    """Apply ``id_pre ⊗ m ⊗ id_post`` to a vector of the space of size pre*d_in*post."""
    if m.cols != d_in:
        raise DimensionError("factor dimension mismatch")
    d_out = m.rows
    field = m.field
    out: dict = {}
    p = field.characteristic
    for k, x in v.items():
        rest, q = divmod(k, post)
        a, i = divmod(rest, d_in)
        col = m._cols.get(i)
        if not col:
            continue
        base = a * d_out
        for r, y in col.items():
            key = (base + r) * post + q
            z = out.get(key, 0) + x * y
            if p:
                z %= p
            if z:
                out[key] = z
            else:
                out.pop(key, None)
    return out


def permute_factors(sigma: Sequence[int], dims: Sequence[int], field: FieldSpec = QQ) -> Matrix:
    """Permutation matrix moving tensor factor j to position sigma[j] (0-based)."""
    n = len(dims)
    if sorted(sigma) != list(range(n)):
        raise DimensionError("sigma must be a permutation of range(len(dims))")
    src = TensorIndex(dims)
    out_dims = [0] * n
    for j, s in enumerate(sigma):
        out_dims[s] = dims[j]
    dst = TensorIndex(out_dims)
    data = {}
    for flat in range(src.size):
        idx = src.decode(flat)
        new = [0] * n
        for j, s in enumerate(sigma):
            new[s] = idx[j]
        data[flat] = {dst.encode(new): field.one}
    return Matrix._raw(dst.size, src.size, field, data)


# ---------------------------------------------------------------- echelon core

class _Echelon:
    """Incrementally maintained fully reduced row echelon basis with optional tags."""

    def __init__(self, field: FieldSpec):
        self.field = field
        self.rows: dict = {}   # pivot -> row vector (pivot entry 1)
        self.tags: dict = {}

    def reduce(self, v: Mapping, tag: Mapping | None = None):
        v = dict(v)
        tag = dict(tag) if tag is not None else None
        f = self.field
        for piv in [k for k in v if k in self.rows]:
            c = v.get(piv)
            if c:
                c = f.neg(c)
                axpy(v, c, self.rows[piv], f)
                if tag is not None:
                    axpy(tag, c, self.tags[piv], f)
        return v, tag

    def add(self, v: Mapping, tag: Mapping | None = None):
        """Insert v; returns the residual tag when v was dependent, else None."""
        v, tag = self.reduce(v, tag)
        if not v:
            return tag if tag is not None else {}
        f = self.field
        piv = min(v)
        c = f.inv(v[piv])
        v = vec_scale(v, c, f)
        if tag is not None:
            tag = vec_scale(tag, c, f)
        for q, row in self.rows.items():
            x = row.get(piv)
            if x:
                x = f.neg(x)
                axpy(row, x, v, f)
                if tag is not None:
                    axpy(self.tags[q], x, tag, f)
        self.rows[piv] = v
        if tag is not None:
            self.tags[piv] = tag
        return None

    def sorted_rows(self) -> tuple:
        return tuple(self.rows[p] for p in sorted(self.rows))


def vec_coerce(v: Mapping, field: FieldSpec) -> dict:
    out = {}
    for k, x in v.items():
        x = field(x)
        if x:
            out[k] = x
    return out


class Subspace:
    """Subspace of field^ambient held as its unique reduced row echelon basis."""

    __slots__ = ("ambient", "field", "basis", "pivots")

    def __init__(self, ambient: int, field: FieldSpec, vectors: Iterable[Mapping] = ()):
        ech = _Echelon(field)
        for v in vectors:
            for k in v:
                if not 0 <= k < ambient:
                    raise DimensionError(f"coordinate {k} outside ambient {ambient}")
            ech.add(vec_coerce(v, field))
        self._set(ambient, field, ech)

    def _set(self, ambient, field, ech: _Echelon):
        self.ambient = ambient
        self.field = field
        self.pivots = tuple(sorted(ech.rows))
        self.basis = tuple(ech.rows[p] for p in self.pivots)

    @classmethod
    def _from_echelon(cls, ambient, field, ech):
        s = cls.__new__(cls)
        s._set(ambient, field, ech)
        return s

    @classmethod
    def full(cls, ambient: int, field: FieldSpec) -> "Subspace":
        return cls(ambient, field, ({i: field.one} for i in range(ambient)))

    @classmethod
    def zero(cls, ambient: int, field: FieldSpec) -> "Subspace":
        return cls(ambient, field)

    @property
    def dim(self) -> int:
        return len(self.basis)

    def _echelon(self) -> _Echelon:
        ech = _Echelon(self.field)
        for p, r in zip(self.pivots, self.basis):
            ech.rows[p] = dict(r)
        return ech

    def contains(self, v: Mapping) -> bool:
        res, _ = self._echelon().reduce(vec_coerce(v, self.field))
        return not res

    def is_full(self) -> bool:
        return self.dim == self.ambient

    def as_matrix(self) -> Matrix:
        """Basis vectors as the rows of a dim x ambient matrix."""
        return Matrix.from_columns(self.ambient, self.field, self.basis).transpose()

    def __eq__(self, other):
        if not isinstance(other, Subspace):
            return NotImplemented
        return (self.ambient, self.field, self.basis) == (other.ambient, other.field, other.basis)

    def __hash__(self):
        return hash((self.ambient, self.pivots))

    def __le__(self, other: "Subspace") -> bool:
        _check_ambient(self, other)
        return all(other.contains(v) for v in self.basis)

    def __repr__(self):
        return f"Subspace(dim={self.dim}, ambient={self.ambient}, {self.field})"


def _check_ambient(a: Subspace, b: Subspace):
    if a.ambient != b.ambient:
        raise DimensionError(f"ambient mismatch: {a.ambient} vs {b.ambient}")
    check_same_field(a.field, b.field)


def rref(m: Matrix) -> Matrix:
    """Reduced row echelon form of m (zero rows dropped)."""
    s = Subspace(m.cols, m.field, m.row_vectors())
    return Matrix.from_columns(m.cols, m.field, s.basis).transpose()


def kernel(m: Matrix) -> Subspace:
    """Null space {x : m x = 0} as a subspace of the domain."""
    f = m.field
    ech = _Echelon(f)
    null = []
    for j in range(m.cols):
        res = ech.add(m._cols.get(j, {}), {j: f.one})
        if res is not None:
            null.append(res)
    return Subspace(m.cols, f, null)


def rank(m: Matrix) -> int:
    return image(m).dim


def image(m: Matrix) -> Subspace:
    ech = _Echelon(m.field)
    for c in m._cols.values():
        ech.add(c)
    return Subspace._from_echelon(m.rows, m.field, ech)


def span(ambient: int, field: FieldSpec, vectors: Iterable[Mapping]) -> Subspace:
    return Subspace(ambient, field, vectors)


def subspace_sum(a: Subspace, b: Subspace) -> Subspace:
    _check_ambient(a, b)
    ech = a._echelon()
    for v in b.basis:
        ech.add(v)
    return Subspace._from_echelon(a.ambient, a.field, ech)


def intersect(a: Subspace, b: Subspace) -> Subspace:
    """Zassenhaus: echelonize rows (u, u) for u in a and (w, 0) for w in b."""
    _check_ambient(a, b)
    n = a.ambient
    f = a.field
    ech = _Echelon(f)
    for u in a.basis:
        ech.add({**u, **{k + n: x for k, x in u.items()}})
    for w in b.basis:
        ech.add(w)
    out = [{k - n: x for k, x in row.items()} for p, row in ech.rows.items() if p >= n]
    return Subspace(n, f, out)


def equals(a: Subspace, b: Subspace) -> bool:
    _check_ambient(a, b)
    return a == b


def contains(a: Subspace, v: Mapping) -> bool:
    return a.contains(v)


def tensor_subspace(a: Subspace, b: Subspace) -> Subspace:
    field = check_same_field(a.field, b.field)
    vecs = [tensor_vectors(u, w, b.ambient, field) for u in a.basis for w in b.basis]
    return Subspace(a.ambient * b.ambient, field, vecs)


def restrict_to(m: Matrix, s: Subspace) -> Matrix:
    """Matrix of m precomposed with the inclusion of s (columns = images of s's basis)."""
    return Matrix.from_columns(m.rows, m.field, [m.apply(v) for v in s.basis])
