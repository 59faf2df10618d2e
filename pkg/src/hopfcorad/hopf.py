"""Bialgebras, Hopf algebras, concrete constructors and the primitive-power filtration."""
from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from functools import lru_cache
from itertools import combinations, permutations, product
from math import comb, factorial
from typing import Mapping, Sequence

from . import coalg
from .coalg import Coalgebra, TruncationWindow, ValidationReport, apply_on_factor
from .errors import AxiomError, PreconditionError, StructureError, WindowOverflowError
from .exactla import (
    QQ, FieldSpec, GF, Matrix, Subspace, TensorIndex, axpy, check_same_field, kernel,
    permute_factors, span, tensor_subspace, tensor_vectors, vec_coerce, vec_scale,
)


@dataclass(frozen=True, eq=False)
class Bialgebra:
    coalgebra: Coalgebra
    mul: Matrix
    _memo: dict = dc_field(default_factory=dict, repr=False, compare=False)

    field = property(lambda self: self.coalgebra.field)
    dim = property(lambda self: self.coalgebra.dim)
    labels = property(lambda self: self.coalgebra.labels)
    unit = property(lambda self: self.coalgebra.unit)
    comul = property(lambda self: self.coalgebra.comul)
    counit = property(lambda self: self.coalgebra.counit)
    degrees = property(lambda self: self.coalgebra.degrees)
    window = property(lambda self: self.coalgebra.window)

    def check_representable(self, i: int, j: int):
        w = self.window
        if w is not None and self.degrees[i] + self.degrees[j] > w.max_degree:
            raise WindowOverflowError(
                f"{self.labels[i]}·{self.labels[j]} has degree above the window bound {w.max_degree}")

    def basis_product(self, i: int, j: int) -> dict:
        self.check_representable(i, j)
        return self.mul.column(i * self.dim + j)

    def multiply(self, a: Mapping, b: Mapping) -> dict:
        f = self.field
        out: dict = {}
        for i, x in a.items():
            for j, y in b.items():
                axpy(out, f.mul(x, y), self.basis_product(i, j), f)
        return out

    def multiply_many(self, vectors: Sequence[Mapping]) -> dict:
        out = dict(self.unit)
        for v in vectors:
            out = self.multiply(out, v)
        return out


@dataclass(frozen=True, eq=False)
class HopfAlgebra(Bialgebra):
    antipode: Matrix | None = None


def validate_bialgebra(h: Bialgebra) -> ValidationReport:
    c = h.coalgebra
    rep = coalg.validate(c)
    d, f = h.dim, h.field
    if (h.mul.rows, h.mul.cols) != (d, d * d):
        raise StructureError(f"multiplication must be {d}x{d*d}")
    check_same_field(h.mul.field, f)
    deg = h.degrees
    D = h.window.max_degree if h.window is not None else None

    def fits(*idx):
        return D is None or sum(deg[i] for i in idx) <= D

    unit = dict(h.unit)
    for i in range(d):
        if h.multiply(unit, {i: f.one}) != {i: f.one} or h.multiply({i: f.one}, unit) != {i: f.one}:
            rep.fail("unit", h.labels[i])
    for i in range(d):
        for j in range(d):
            if not fits(i, j):
                continue
            ab = h.basis_product(i, j)
            for k in range(d):
                if not fits(i, j, k):
                    continue
                if h.multiply(ab, {k: f.one}) != h.multiply({i: f.one}, h.basis_product(j, k)):
                    rep.fail("associativity", f"{h.labels[i]},{h.labels[j]},{h.labels[k]}")
            lhs = h.comul.apply(ab)
            rhs = _tensor_square_product(h, h.comul.column(i), h.comul.column(j))
            if lhs != rhs:
                rep.fail("comultiplication is multiplicative", f"{h.labels[i]},{h.labels[j]}")
            if coalg.counit_value(c, ab) != f.mul(coalg.counit_value(c, {i: f.one}), coalg.counit_value(c, {j: f.one})):
                rep.fail("counit is multiplicative", f"{h.labels[i]},{h.labels[j]}")
    if isinstance(h, HopfAlgebra) and h.antipode is not None:
        S = h.antipode
        if (S.rows, S.cols) != (d, d):
            raise StructureError("antipode must be square")
        for b in range(d):
            db = h.comul.column(b)
            eps = coalg.counit_value(c, {b: f.one})
            target = vec_scale(unit, eps, f)
            left, right = {}, {}
            for k, x in db.items():
                i, j = divmod(k, d)
                axpy(left, x, h.multiply(S.column(i), {j: f.one}), f)
                axpy(right, x, h.multiply({i: f.one}, S.column(j)), f)
            if left != target or right != target:
                rep.fail("antipode", h.labels[b])
    return rep


def _tensor_square_product(h: Bialgebra, u: Mapping, v: Mapping) -> dict:
    """Product in H⊗H of two vectors given in the flat d² basis."""
    d, f = h.dim, h.field
    out: dict = {}
    for k1, x in u.items():
        a1, a2 = divmod(k1, d)
        for k2, y in v.items():
            b1, b2 = divmod(k2, d)
            p1 = h.basis_product(a1, b1)
            p2 = h.basis_product(a2, b2)
            axpy(out, f.mul(x, y), tensor_vectors(p1, p2, d, f), f)
    return out


def validated(h):
    rep = validate_bialgebra(h)
    if not rep.ok:
        raise AxiomError(f"structure axioms fail: {rep}", rep)
    return h


def make_hopf(field: FieldSpec, labels, comul_cols, counit_vals, unit, mul_cols, antipode_cols=None,
              degrees=None, window=None, check=True):
    d = len(labels)
    c = Coalgebra(field, tuple(labels), Matrix.from_columns(d * d, field, comul_cols),
                  Matrix(1, d, field, {j: {0: x} for j, x in enumerate(counit_vals)}),
                  {k: field(x) for k, x in unit.items() if field(x)},
                  tuple(degrees) if degrees is not None else None, window)
    mul = Matrix.from_columns(d, field, mul_cols)
    if antipode_cols is None:
        h = Bialgebra(c, mul)
    else:
        h = HopfAlgebra(c, mul, antipode=Matrix.from_columns(d, field, antipode_cols))
    return validated(h) if check else h


# ---------------------------------------------------------------- groups

@dataclass(frozen=True)
class FiniteGroupTable:
    labels: tuple
    table: tuple
    identity: int
    inverse: tuple

    @property
    def order(self) -> int:
        return len(self.labels)

    @classmethod
    def from_table(cls, labels: Sequence[str], table: Sequence[Sequence[int]]) -> "FiniteGroupTable":
        n = len(labels)
        tab = tuple(tuple(int(x) for x in row) for row in table)
        if len(tab) != n or any(len(r) != n or any(not 0 <= x < n for x in r) for r in tab):
            raise StructureError("group table must be n x n with entries in range")
        ids = [e for e in range(n) if all(tab[e][g] == g and tab[g][e] == g for g in range(n))]
        if len(ids) != 1:
            raise StructureError("group table has no identity")
        e = ids[0]
        inv = []
        for g in range(n):
            cands = [h for h in range(n) if tab[g][h] == e and tab[h][g] == e]
            if not cands:
                raise StructureError(f"element {labels[g]} has no inverse")
            inv.append(cands[0])
        for a in range(n):
            for b in range(n):
                for c in range(n):
                    if tab[tab[a][b]][c] != tab[a][tab[b][c]]:
                        raise StructureError("group table is not associative")
        return cls(tuple(labels), tab, e, tuple(inv))


def cyclic_group(n: int) -> FiniteGroupTable:
    labels = ["e", "g"] + [f"g^{k}" for k in range(2, n)]
    return FiniteGroupTable.from_table(labels[:n], [[(i + j) % n for j in range(n)] for i in range(n)])


def _cycle_label(perm: tuple) -> str:
    seen, cycles = set(), []
    for s in range(len(perm)):
        if s in seen or perm[s] == s:
            continue
        cyc, x = [], s
        while x not in seen:
            seen.add(x)
            cyc.append(str(x + 1))
            x = perm[x]
        cycles.append("(" + "".join(cyc) + ")")
    return "".join(cycles) or "e"


def symmetric_group(n: int) -> FiniteGroupTable:
    """Permutations composed as functions: (g h)(x) = g(h(x))."""
    perms = sorted(permutations(range(n)), key=lambda p: (p != tuple(range(n)), len(_cycle_label(p)), _cycle_label(p)))
    index = {p: i for i, p in enumerate(perms)}
    table = [[index[tuple(g[h[x]] for x in range(n))] for h in perms] for g in perms]
    return FiniteGroupTable.from_table([_cycle_label(p) for p in perms], table)


def direct_product(g: FiniteGroupTable, h: FiniteGroupTable) -> FiniteGroupTable:
    m = h.order
    labels = [f"({a},{b})" for a in g.labels for b in h.labels]
    table = [[g.table[i // m][j // m] * m + h.table[i % m][j % m] for j in range(g.order * m)]
             for i in range(g.order * m)]
    return FiniteGroupTable.from_table(labels, table)


def group_algebra(g: FiniteGroupTable, field: FieldSpec = QQ) -> HopfAlgebra:
    n = g.order
    one = field.one
    return make_hopf(
        field, g.labels,
        comul_cols=[{x * n + x: one} for x in range(n)],
        counit_vals=[one] * n,
        unit={g.identity: one},
        mul_cols=[{g.table[i][j]: one} for i in range(n) for j in range(n)],
        antipode_cols=[{g.inverse[x]: one} for x in range(n)],
    )


# ---------------------------------------------------------------- polynomial-type builders

def _power_label(m: int, var: str = "t") -> str:
    return "1" if m == 0 else var if m == 1 else f"{var}^{m}"


def truncated_polynomial_hopf(p: int, k: int) -> HopfAlgebra:
    """F_p[t]/(t^{p^k}) with t primitive."""
    f = GF(p)
    d = p ** k
    return make_hopf(
        f, [_power_label(m) for m in range(d)],
        comul_cols=[{i * d + (m - i): comb(m, i) % p for i in range(m + 1)} for m in range(d)],
        counit_vals=[1] + [0] * (d - 1),
        unit={0: 1},
        mul_cols=[({i + j: 1} if i + j < d else {}) for i in range(d) for j in range(d)],
        antipode_cols=[{m: (-1) ** m} for m in range(d)],
        degrees=range(d),
    )


def polynomial_window(field: FieldSpec, D: int) -> HopfAlgebra:
    """Degree <= D part of k[t], t primitive; products above D raise."""
    d = D + 1
    return make_hopf(
        field, [_power_label(m) for m in range(d)],
        comul_cols=[{i * d + (m - i): comb(m, i) for i in range(m + 1)} for m in range(d)],
        counit_vals=[1] + [0] * D,
        unit={0: 1},
        mul_cols=[({i + j: 1} if i + j <= D else {}) for i in range(d) for j in range(d)],
        antipode_cols=[{m: (-1) ** m} for m in range(d)],
        degrees=range(d), window=TruncationWindow(D),
    )


def _words(n_letters: int, D: int) -> list:
    out = [()]
    layer = [()]
    for _ in range(D):
        layer = [w + (a,) for w in layer for a in range(1, n_letters + 1)]
        out.extend(layer)
    return out


def _word_label(w: tuple, n_letters: int, style: str) -> str:
    if not w:
        return "1"
    if style == "bar":
        names = ["v"] if n_letters == 1 else [f"v{i}" for i in range(1, n_letters + 1)]
        return "[" + "|".join(names[a - 1] for a in w) + "]"
    return "".join(f"x{a}" for a in w)


def _shuffles(u: tuple, v: tuple):
    n, m = len(u), len(v)
    for pos in _subsets(n + m, n):
        out, iu, iv = [], 0, 0
        s = set(pos)
        for k in range(n + m):
            if k in s:
                out.append(u[iu])
                iu += 1
            else:
                out.append(v[iv])
                iv += 1
        yield tuple(out)


def _subsets(n: int, k: int):
    return combinations(range(n), k)


def shuffle_window(field: FieldSpec, dimV: int, D: int) -> HopfAlgebra:
    """Degree <= D part of the shuffle algebra Sh(V): deconcatenation coproduct."""
    words = _words(dimV, D)
    index = {w: i for i, w in enumerate(words)}
    d = len(words)
    f = field
    comul = [{index[w[:k]] * d + index[w[k:]]: 1 for k in range(len(w) + 1)} for w in words]
    mul = []
    for u in words:
        for v in words:
            col: dict = {}
            if len(u) + len(v) <= D:
                for s in _shuffles(u, v):
                    col[index[s]] = col.get(index[s], 0) + 1
            mul.append(col)
    return make_hopf(
        f, [_word_label(w, dimV, "bar") for w in words], comul, [1] + [0] * (d - 1), {0: 1}, mul,
        antipode_cols=[{index[tuple(reversed(w))]: (-1) ** len(w)} for w in words],
        degrees=[len(w) for w in words], window=TruncationWindow(D),
    )


def tensor_hopf_window(field: FieldSpec, n: int, D: int) -> HopfAlgebra:
    """Degree <= D part of the free associative algebra on n primitive letters."""
    words = _words(n, D)
    index = {w: i for i, w in enumerate(words)}
    d = len(words)
    comul = []
    for w in words:
        col: dict = {}
        L = len(w)
        for mask in range(1 << L):
            left = tuple(w[i] for i in range(L) if mask >> i & 1)
            right = tuple(w[i] for i in range(L) if not mask >> i & 1)
            key = index[left] * d + index[right]
            col[key] = col.get(key, 0) + 1
        comul.append(col)
    mul = [({index[u + v]: 1} if len(u) + len(v) <= D else {}) for u in words for v in words]
    return make_hopf(
        field, [_word_label(w, n, "letters") for w in words], comul, [1] + [0] * (d - 1), {0: 1}, mul,
        antipode_cols=[{index[tuple(reversed(w))]: (-1) ** len(w)} for w in words],
        degrees=[len(w) for w in words], window=TruncationWindow(D),
    )


def dual_hopf(h: HopfAlgebra) -> HopfAlgebra:
    """Linear dual with every structure matrix transposed and roles swapped."""
    if h.window is not None:
        raise PreconditionError("dual requires a finite-dimensional algebra, not a window")
    f, d = h.field, h.dim
    mul_t = h.mul.transpose()          # d² x d: becomes the comultiplication
    comul_t = h.comul.transpose()      # d x d²: becomes the multiplication
    counit_vals = [h.unit.get(i, f.zero) for i in range(d)]
    unit = {j: x for j, col in h.counit.columns() for x in [col.get(0)] if x}
    anti = h.antipode.transpose() if getattr(h, "antipode", None) is not None else None
    labels = [lab[:-1] if lab.endswith("*") else lab + "*" for lab in h.labels]
    return make_hopf(
        f, labels, [mul_t.column(j) for j in range(d)], counit_vals, unit,
        [comul_t.column(j) for j in range(d * d)],
        antipode_cols=[anti.column(j) for j in range(d)] if anti is not None else None,
        degrees=h.degrees,
    )


# ---------------------------------------------------------------- structural predicates

def is_commutative(h: Bialgebra) -> bool:
    d = h.dim
    return all(h.mul.column(i * d + j) == h.mul.column(j * d + i) for i in range(d) for j in range(i + 1, d))


def is_cocommutative(c) -> bool:
    c = coalg.as_coalgebra(c)
    d = c.dim
    swap = permute_factors((1, 0), (d, d), c.field)
    return swap @ c.comul == c.comul


def basis_vector(h, i: int) -> dict:
    return {i: h.field.one}


# ---------------------------------------------------------------- primitive-power filtration

def primitive_power_filtration(h: Bialgebra, n_max: int) -> list:
    """[P_1^0, ..., P_1^{n_max}] where P_1^n is spanned by n-fold products of P_1 elements."""
    c = h.coalgebra
    p1 = coalg.coradical_term(c, 1)
    out = [span(h.dim, h.field, [h.unit])]
    for _ in range(n_max):
        prods = [h.multiply(s, p) for s in out[-1].basis for p in p1.basis]
        out.append(span(h.dim, h.field, prods))
    return out


@dataclass(frozen=True)
class GoodnessResult:
    good: bool
    failing_n: int | None = None
    witness: dict | None = None

    def __bool__(self):
        return self.good


def is_good(h: Bialgebra, n_max: int) -> GoodnessResult:
    prim_pow = primitive_power_filtration(h, n_max)
    for n in range(n_max + 1):
        pn = coalg.coradical_term(h.coalgebra, n)
        if pn != prim_pow[n]:
            witness = next((v for v in pn.basis if not prim_pow[n].contains(v)), None)
            return GoodnessResult(False, n, witness)
    return GoodnessResult(True)


def is_primitive_bialgebra(h: Bialgebra, n_max: int | None = None) -> bool:
    """Finite criterion: P_1^n = H for some n <= n_max (default dim H)."""
    n_max = h.dim if n_max is None else n_max
    return any(s.is_full() for s in primitive_power_filtration(h, n_max))


def shuffle_tensors(u: Mapping, v: Mapping, d: int, n: int, m: int, field: FieldSpec) -> dict:
    """Shuffle product H^{⊗n} x H^{⊗m} -> H^{⊗(n+m)} interleaving tensor factors."""
    tu, tv, tw = TensorIndex([d] * n), TensorIndex([d] * m), TensorIndex([d] * (n + m))
    out: dict = {}
    for ku, x in u.items():
        a = tu.decode(ku)
        for kv, y in v.items():
            b = tv.decode(kv)
            xy = field.mul(x, y)
            for s in _shuffles(a, b):
                key = tw.encode(s)
                axpy(out, xy, {key: field.one}, field)
    return out


def shuffle_compat_check(h: Bialgebra, a: Mapping, b: Mapping, n: int, m: int) -> bool:
    c = h.coalgebra
    f = h.field
    a = vec_coerce(a, f)
    b = vec_coerce(b, f)
    if not coalg.coradical_term(c, n).contains(a):
        raise PreconditionError(f"a is not in P_{n}", witness=("a", coalg.delta_map(c, n + 1).apply(a)))
    if not coalg.coradical_term(c, m).contains(b):
        raise PreconditionError(f"b is not in P_{m}", witness=("b", coalg.delta_map(c, m + 1).apply(b)))
    lhs = coalg.delta_map(c, n + m).apply(h.multiply(a, b))
    rhs = shuffle_tensors(coalg.delta_map(c, n).apply(a), coalg.delta_map(c, m).apply(b), h.dim, n, m, f)
    return lhs == rhs


def _prim_tensor_power(c: Coalgebra, n: int) -> Subspace:
    prim = coalg.primitives(c)
    out = Subspace.full(1, c.field)
    for _ in range(n):
        out = tensor_subspace(out, prim)
    return out


def symmetrizer(v: Mapping, d: int, n: int, field: FieldSpec) -> dict:
    out: dict = {}
    for sigma in permutations(range(n)):
        axpy(out, field.one, permute_factors(sigma, [d] * n, field).apply(v), field)
    return out


def symmetry_and_goodness_checks(h: Bialgebra, n_max: int) -> dict:
    """Per n: Σ_n-invariance of δ^n(P_n), δ^n(P_n) ⊆ Prim^{⊗n}, and f_n∘h_n = s_n."""
    c = h.coalgebra
    f, d = h.field, h.dim
    prim = coalg.primitives(c)
    good = is_good(h, n_max)
    out = {}
    for n in range(n_max + 1):
        dn = coalg.delta_map(c, n)
        images = [dn.apply(v) for v in coalg.coradical_term(c, n).basis]
        swaps = [permute_factors(tuple(range(i)) + (i + 1, i) + tuple(range(i + 2, n)), [d] * n, f)
                 for i in range(n - 1)]
        invariant = all(s.apply(w) == w for w in images for s in swaps)
        pt = _prim_tensor_power(c, n)
        factorizes = all(pt.contains(w) for w in images)
        fh_ok = True
        for combo in product(prim.basis, repeat=n):
            pure = {0: f.one}
            for p in combo:
                pure = tensor_vectors(pure, p, d, f)
            prod_ = h.multiply_many(combo)
            if dn.apply(prod_) != symmetrizer(pure, d, n, f):
                fh_ok = False
                break
        out[n] = {
            "sigma_invariant": invariant,
            "factorizes_through_prim": factorizes,
            "f_h_equals_s": fh_ok,
            "good_at_n": good.good or (good.failing_n is not None and n < good.failing_n),
        }
    return out


def prim_closure_checks(h: Bialgebra) -> dict:
    c = h.coalgebra
    f = h.field
    prim = coalg.primitives(c)
    basis = prim.basis
    brackets = True
    for a in basis:
        for b in basis:
            br = axpy(h.multiply(a, b), f.neg(f.one), h.multiply(b, a), f)
            if not prim.contains(br):
                brackets = False
    out = {"prim_dim": prim.dim, "brackets_in_prim": brackets}
    p = f.characteristic
    if p:
        out["p_powers_in_prim"] = all(prim.contains(h.multiply_many([a] * p)) for a in basis)
    return out


# ---------------------------------------------------------------- digit sums

def digit_sum(m: int, p: int) -> int:
    s = 0
    while m:
        m, r = divmod(m, p)
        s += r
    return s


def lucas_predicate(m: int, r: int, p: int) -> bool:
    """Is there a composition of m into r positive parts with multinomial coefficient prime to p?

    Exhaustive search over compositions with memoized suffixes; the multinomial
    factors as a product of binomials, each prime to p iff the whole is.
    """
    if r < 1:
        raise ValueError("r must be at least 1")

    @lru_cache(maxsize=None)
    def exists(rest: int, parts: int) -> bool:
        if parts == 1:
            return rest >= 1
        return any(comb(rest, k) % p and exists(rest - k, parts - 1) for k in range(1, rest - parts + 2))

    return m >= r and exists(m, r)


def lucas_predicate_enumerate(m: int, r: int, p: int) -> bool:
    """Plain enumeration of compositions; only for small m."""
    def comps(rest, parts):
        if parts == 1:
            if rest >= 1:
                yield (rest,)
            return
        for k in range(1, rest - parts + 2):
            for tail in comps(rest - k, parts - 1):
                yield (k,) + tail
    for ks in comps(m, r):
        coeff = factorial(m)
        for k in ks:
            coeff //= factorial(k)
        if coeff % p:
            return True
    return False
