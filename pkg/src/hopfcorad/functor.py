"""gr^op-modules: exponential modules, the associative-word bimodule, and their filtrations."""
from __future__ import annotations

import threading
from itertools import combinations, product
from math import prod
from typing import Mapping, Sequence

from . import coalg, hopf
from .cache import MatrixCache, digest, matrix_digest
from .errors import HopfCoradError, PreconditionError
from .exactla import (
    FieldSpec, Matrix, Subspace, TensorIndex, axpy, image, kernel, kronecker, kronecker_all,
    permute_factors, span, subspace_sum, tensor_subspace, vstack,
)
from .grop import (
    AssWordTuple, B_expand, E_embed, GropMorphism, LieTupleMorphism, LinMorphism, ass_basis, format_morphism,
    identity, inner_conjugation, iterated_diagonal, tau, theta_insertion,
)


class GropModule:
    """A functor from gr^op to vector spaces evaluated on basis vectors."""

    field: FieldSpec

    def __init__(self):
        self._acts: dict = {}
        self._lock = threading.Lock()

    def dim(self, X: int) -> int:
        raise NotImplementedError

    def apply(self, f: GropMorphism, v: Mapping) -> dict:
        raise NotImplementedError

    def apply_lin(self, f: LinMorphism, v: Mapping) -> dict:
        out: dict = {}
        for g, c in f.items():
            axpy(out, self.field(c), self.apply(g, v), self.field)
        return out

    def _compute_act(self, f: GropMorphism) -> Matrix:
        cols = {b: self.apply(f, {b: self.field.one}) for b in range(self.dim(f.source))}
        return Matrix(self.dim(f.target), self.dim(f.source), self.field, cols)

    def act(self, f: GropMorphism) -> Matrix:
        m = self._acts.get(f)
        if m is None:
            m = self._compute_act(f)
            with self._lock:
                self._acts.setdefault(f, m)
        return m

    def act_lin(self, f: LinMorphism) -> Matrix:
        out = Matrix.zero(self.dim(f.target), self.dim(f.source), self.field)
        for g, c in f.items():
            out = out + self.act(g).scale(self.field(c))
        return out


class _Router:
    """Evaluates gr^op morphisms on basis tensors of a cocommutative Hopf algebra."""

    def __init__(self, h: hopf.HopfAlgebra):
        self.h = h
        self.f = h.field
        self.d = h.dim
        self._legs: dict = {}
        self._slot: dict = {}

    def legs(self, i: int, k: int) -> list:
        key = (i, k)
        if key not in self._legs:
            c = self.h.coalgebra
            if k == 0:
                eps = coalg.counit_value(c, {i: self.f.one})
                self._legs[key] = [((), eps)] if eps else []
            else:
                ti = TensorIndex([self.d] * k)
                col = coalg.iterated_comul(c, k).column(i)
                self._legs[key] = [(ti.decode(flat), x) for flat, x in sorted(col.items())]
        return self._legs[key]

    def slot_product(self, letters: tuple) -> dict:
        """Product of (basis index, sign) factors, S applied to the negative ones."""
        if letters not in self._slot:
            h = self.h
            out = dict(h.unit)
            for b, sign in letters:
                v = {b: self.f.one} if sign > 0 else h.antipode.column(b)
                out = h.multiply(out, v)
            self._slot[letters] = out
        return self._slot[letters]

    def route(self, g: GropMorphism, factors: Sequence[int]) -> dict:
        f, d = self.f, self.d
        occ = g.occurrences()
        per_var: list = [[] for _ in range(g.source)]
        for k, (_, _, x) in enumerate(occ):
            per_var[abs(x) - 1].append(k)
        choices = [self.legs(factors[i], len(per_var[i])) for i in range(g.source)]
        slots: list = [[] for _ in range(g.target)]
        for k, (s, _, _) in enumerate(occ):
            slots[s].append(k)
        out: dict = {}
        assign = [0] * len(occ)
        for combo in product(*choices):
            coef = f.one
            for i, (legs, x) in enumerate(combo):
                coef = f.mul(coef, x)
                for j, k in enumerate(per_var[i]):
                    assign[k] = legs[j]
            vec = {0: coef}
            for s in range(g.target):
                letters = tuple((assign[k], 1 if occ[k][2] > 0 else -1) for k in slots[s])
                piece = self.slot_product(letters)
                nxt: dict = {}
                for key, y in vec.items():
                    for b, z in piece.items():
                        nxt[key * d + b] = f.mul(y, z)
                vec = nxt
            axpy(out, f.one, vec, f)
        return out


class ExponentialModule(GropModule):
    """n -> H^{⊗n} for a finite-dimensional cocommutative Hopf algebra H."""

    def __init__(self, h: hopf.HopfAlgebra, cache: MatrixCache | None = None):
        super().__init__()
        if getattr(h, "antipode", None) is None:
            raise PreconditionError("the exponential module needs an antipode")
        if not hopf.is_cocommutative(h):
            raise PreconditionError("the exponential module needs a cocommutative Hopf algebra")
        self.hopf = h
        self.field = h.field
        self.d = h.dim
        self._router = _Router(h)
        self._cache = cache
        self._digest = None

    def dim(self, X: int) -> int:
        return self.d ** X

    def route_basis(self, g: GropMorphism, factors: Sequence[int]) -> dict:
        return self._router.route(g, factors)

    def apply(self, g: GropMorphism, v: Mapping) -> dict:
        ti = TensorIndex([self.d] * g.source)
        out: dict = {}
        for k, x in v.items():
            axpy(out, self.field(x), self._router.route(g, ti.decode(k)), self.field)
        return out

    def _compute_act(self, g: GropMorphism) -> Matrix:
        if self._cache is None:
            return super()._compute_act(g)
        if self._digest is None:
            h = self.hopf
            self._digest = digest(h.labels, matrix_digest(h.comul), matrix_digest(h.counit),
                                  matrix_digest(h.mul), matrix_digest(h.antipode), sorted(h.unit.items()))
        key = digest(self._digest, format_morphism(g))
        m = self._cache.get(key, self.field)
        if m is None:
            m = super()._compute_act(g)
            self._cache.put(key, m)
        return m


class DeltaCatModule(GropModule):
    """m -> span of multilinear word tuples inside H_n^{⊗m}, with H_n free on n primitive letters."""

    def __init__(self, n: int, field: FieldSpec | None = None):
        super().__init__()
        from .exactla import QQ
        self.n = n
        self.field = field or QQ
        self.hopf = hopf.tensor_hopf_window(self.field, n, n)
        self._inner = ExponentialModule(self.hopf)
        self._word_index = {self._parse_label(lab): i for i, lab in enumerate(self.hopf.labels)}
        self._bases: dict = {}

    @staticmethod
    def _parse_label(lab: str) -> tuple:
        if lab == "1":
            return ()
        return tuple(int(t) for t in lab.split("x")[1:])

    def basis(self, m: int) -> list:
        if m not in self._bases:
            b = ass_basis(self.n, m)
            self._bases[m] = (b, {a: i for i, a in enumerate(b)})
        return self._bases[m][0]

    def index(self, a: AssWordTuple) -> int:
        self.basis(a.target)
        return self._bases[a.target][1][a]

    def dim(self, X: int) -> int:
        return len(self.basis(X))

    def to_tensor(self, a: AssWordTuple) -> int:
        d = self.hopf.dim
        flat = 0
        for w in a.words:
            flat = flat * d + self._word_index[w]
        return flat

    def apply(self, g: GropMorphism, v: Mapping) -> dict:
        src = self.basis(g.source)
        d = self.hopf.dim
        words = [None] * d
        for w, i in self._word_index.items():
            words[i] = w
        ti = TensorIndex([d] * g.target)
        out: dict = {}
        for k, x in v.items():
            factors = [self._word_index[w] for w in src[k].words]
            for flat, y in self._inner.route_basis(g, factors).items():
                tup = AssWordTuple(self.n, [words[i] for i in ti.decode(flat)])
                axpy(out, self.field.mul(self.field(x), y), {self.index(tup): self.field.one}, self.field)
        return out


# ---------------------------------------------------------------- cross-effects

def _chi_apply(F: GropModule, Xs: Sequence[int], v: Mapping, blocks: Sequence[int] | None = None) -> dict:
    """Apply the product of (id - F(τ_i)) over the chosen blocks (default all)."""
    f = F.field
    for i in (range(1, len(Xs) + 1) if blocks is None else blocks):
        v = axpy(dict(v), f.neg(f.one), F.apply(tau(i, Xs), v), f)
    return v


def cross_effect(F: GropModule, Xs: Sequence[int], check: bool = True) -> Subspace:
    N = sum(Xs)
    dim = F.dim(N)
    if check:
        for i in range(1, len(Xs) + 1):
            t = F.act(tau(i, Xs))
            if t @ t != t:
                raise HopfCoradError(f"F(τ_{i}) is not idempotent")
    return span(dim, F.field, (_chi_apply(F, Xs, {b: F.field.one}) for b in range(dim)))


def decomposition_check(F: GropModule, Xs: Sequence[int], details: bool = False):
    """F(ΣX) splits as F(0) plus the cross-effects of all nonempty sub-tuples."""
    f = F.field
    k = len(Xs)
    N = sum(Xs)
    dim = F.dim(N)
    taus = [F.act(tau(i, Xs)) for i in range(1, k + 1)]
    ident = Matrix.identity(dim, f)
    ok = True
    pieces = []
    total = Subspace.zero(dim, f)
    for r in range(k + 1):
        for S in combinations(range(k), r):
            proj = ident
            for i in range(k):
                proj = proj @ ((ident - taus[i]) if i in S else taus[i])
            eig = image(proj)
            expect = F.dim(0) if not S else cross_effect(F, [Xs[i] for i in S], check=False).dim
            ok &= eig.dim == expect
            pieces.append((tuple(i + 1 for i in S), eig.dim, expect))
            total = subspace_sum(total, eig)
    ok &= total.dim == dim and sum(p[1] for p in pieces) == dim
    return (ok, pieces) if details else ok


def poly_filtration(F: GropModule, n: int, X: int) -> Subspace:
    """Kernel of χ_{[X]^{n+1}} ∘ F(iterated diagonal)."""
    diag = iterated_diagonal(X, n + 1)
    Xs = [X] * (n + 1)
    dim = F.dim(X)
    f = F.field
    cols = {b: _chi_apply(F, Xs, F.apply(diag, {b: f.one})) for b in range(dim)}
    return kernel(Matrix(F.dim(X * (n + 1)), dim, f, cols))


def primitive_part(F: GropModule, n: int) -> Subspace:
    if n == 0:
        return Subspace.full(F.dim(0), F.field)
    return kernel(vstack([F.act_lin(theta_insertion(n, i, F.field)) for i in range(1, n + 1)]))


def symmetric_action(F: GropModule, sigma: Sequence[int]) -> Matrix:
    """F of the permutation morphism moving factor j to position sigma[j] (0-based)."""
    inv = [0] * len(sigma)
    for j, s in enumerate(sigma):
        inv[s] = j
    return F.act(GropMorphism(len(sigma), [(inv[k] + 1,) for k in range(len(sigma))]))


def J_apply(F: GropModule, a: AssWordTuple, v: Mapping) -> dict:
    return F.apply(E_embed(a), v)


def Q_filtration(F: GropModule, n: int, m: int) -> Subspace:
    vecs = []
    for k in range(n + 1):
        prim = primitive_part(F, k)
        if not prim.dim:
            continue
        for a in ass_basis(k, m):
            vecs.extend(J_apply(F, a, v) for v in prim.basis)
    return span(F.dim(m), F.field, vecs)


def lie_action(F: GropModule, l: LieTupleMorphism, x: Mapping) -> dict:
    f = F.field
    if not primitive_part(F, l.source).contains(x):
        raise PreconditionError("vector is not in the primitive part", witness=x)
    out: dict = {}
    for a, c in B_expand(l).items():
        axpy(out, f(c), J_apply(F, a, x), f)
    # a unit block puts 1 in its slot, which is never primitive
    if all(b is not None for b in l.blocks) and not primitive_part(F, l.target).contains(out):
        raise HopfCoradError("Lie action left the primitive part")
    return out


# ---------------------------------------------------------------- theorem checks on α(H)

def corad_eq_poly_check(h: hopf.HopfAlgebra, n_max: int, X_max: int) -> dict:
    F = ExponentialModule(h)
    rows = []
    deg_h = coalg.conilpotency_degree(h.coalgebra)
    conil = []
    for X in range(X_max + 1):
        T = coalg.tensor_power(h.coalgebra, X)
        for n in range(n_max + 1):
            P = poly_filtration(F, n, X)
            C = coalg.coradical_term(T, n)
            rows.append({"n": n, "X": X, "poly_dim": P.dim, "corad_dim": C.dim, "equal": P == C})
        deg_x = coalg.conilpotency_degree(T)
        if X == 0:
            consistent = deg_x == 0
        elif deg_h is None:
            consistent = deg_x is None
        else:
            consistent = deg_x is not None and deg_x <= X * deg_h
        conil.append({"X": X, "degree": deg_x, "consistent": consistent})
    ok = all(r["equal"] for r in rows) and all(c["consistent"] for c in conil)
    return {"ok": ok, "rows": rows, "conilpotency": conil, "conilpotency_degree": deg_h}


def outer_check(h: hopf.HopfAlgebra, n: int = 3) -> dict:
    """Do all inner conjugations act trivially on H^{⊗k}, k <= n?"""
    F = ExponentialModule(h)
    c = h.coalgebra
    for k in range(1, n + 1):
        ident = Matrix.identity(F.dim(k), h.field)
        for j in range(1, k + 1):
            g = inner_conjugation(k, (j,))
            m = F.act(g)
            if m != ident:
                ti = TensorIndex([h.dim] * k)
                b = next(b for b in range(F.dim(k)) if m.column(b) != {b: h.field.one})
                src = "⊗".join(h.labels[i] for i in ti.decode(b))
                tgt = coalg.format_vector(h.labels, m.column(b), h.field, k)
                return {"outer": False, "morphism": format_morphism(g), "witness": f"{src} ↦ {tgt}"}
    return {"outer": True, "morphism": None, "witness": None}


def conjugation_identity_check(h: hopf.HopfAlgebra) -> bool:
    """F([x1|x1x2x1^-1]_2)(x⊗y) = x_(1) ⊗ x_(2) y S(x_(3)) on every basis pair."""
    F = ExponentialModule(h)
    f, d = h.field, h.dim
    act = F.act(inner_conjugation(2, (1,)))
    d3 = coalg.iterated_comul(h.coalgebra, 3)
    t3 = TensorIndex([d] * 3)
    for x in range(d):
        for y in range(d):
            expect: dict = {}
            for flat, coef in d3.column(x).items():
                a, b, c = t3.decode(flat)
                right = h.multiply(h.multiply({b: f.one}, {y: f.one}), h.antipode.column(c))
                axpy(expect, coef, {a * d + r: z for r, z in right.items()}, f)
            if act.column(x * d + y) != expect:
                return False
    return True


def primitive_part_check(h: hopf.HopfAlgebra, n: int) -> bool:
    F = ExponentialModule(h)
    prim = coalg.primitives(h.coalgebra)
    target = Subspace.full(1, h.field)
    for _ in range(n):
        target = tensor_subspace(target, prim)
    return primitive_part(F, n) == target


# ---------------------------------------------------------------- generator decomposition oracle

def generator_factorization(g: GropMorphism) -> list:
    """[D, P, A, M] with g = M∘A∘P∘D: copy, permute, invert, multiply."""
    from .grop import DELTA, EPSILON, ETA, GAMMA, NABLA, compose, free_product_all, permutation_morphism

    def copies(k):
        if k == 0:
            return EPSILON
        out = identity(1)
        for j in range(1, k):
            out = compose(free_product_all([DELTA, identity(j - 1)]), out)
        return out

    def mults(k):
        if k == 0:
            return ETA
        out = identity(1)
        for j in range(1, k):
            out = compose(out, free_product_all([NABLA, identity(j - 1)]))
        return out

    occ = g.occurrences()
    counts = [0] * g.source
    for _, _, x in occ:
        counts[abs(x) - 1] += 1
    D = free_product_all([copies(k) for k in counts])
    offsets = [sum(counts[:i]) for i in range(g.source)]
    seen = [0] * g.source
    pi = []
    for _, _, x in occ:
        i = abs(x) - 1
        pi.append(offsets[i] + seen[i])
        seen[i] += 1
    P = permutation_morphism(pi)
    A = free_product_all([GAMMA if x < 0 else identity(1) for _, _, x in occ])
    M = free_product_all([mults(len(w)) for w in g.words])
    return [D, P, A, M]


def eval_by_generators(h: hopf.HopfAlgebra, g: GropMorphism) -> Matrix:
    """F(g) assembled from structure matrices of the generators, independent of the router."""
    f, d = h.field, h.dim
    I = Matrix.identity(d, f)
    unit_col = Matrix(d, 1, f, {0: dict(h.unit)})

    def copies(k):
        if k == 0:
            return h.counit
        m = I
        for j in range(2, k + 1):
            m = kronecker_all([h.comul] + [I] * (j - 2), f) @ m
        return m

    def mults(k):
        if k == 0:
            return unit_col
        m = I
        for j in range(2, k + 1):
            m = m @ kronecker_all([h.mul] + [I] * (j - 2), f)
        return m

    occ = g.occurrences()
    counts = [0] * g.source
    for _, _, x in occ:
        counts[abs(x) - 1] += 1
    Dm = kronecker_all([copies(k) for k in counts], f)
    offsets = [sum(counts[:i]) for i in range(g.source)]
    seen = [0] * g.source
    sigma = [0] * len(occ)
    for pos, (_, _, x) in enumerate(occ):
        i = abs(x) - 1
        sigma[offsets[i] + seen[i]] = pos
        seen[i] += 1
    Pm = permute_factors(sigma, [d] * len(occ), f)
    Am = kronecker_all([h.antipode if x < 0 else I for _, _, x in occ], f)
    Mm = kronecker_all([mults(len(w)) for w in g.words], f)
    return Mm @ Am @ Pm @ Dm
