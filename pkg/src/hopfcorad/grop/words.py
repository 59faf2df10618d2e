"""Reduced free-group words and morphisms of gr^op.

A letter is a nonzero int: ``+i`` is x_i and ``-i`` is x_i^{-1}.  A morphism
n -> m is a tuple of m reduced words in x_1..x_n.
"""
from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from typing import Iterable, Mapping, Sequence

from ..errors import DimensionError
from ..exactla import QQ, FieldSpec, axpy

FreeWord = tuple


def _as_letter(x) -> int:
    if isinstance(x, tuple):
        var, exp = x
        if exp not in (1, -1) or var < 1:
            raise ValueError(f"bad letter {x!r}")
        return var * exp
    if not isinstance(x, int) or x == 0:
        raise ValueError(f"bad letter {x!r}")
    return x


def reduce_word(letters: Iterable) -> FreeWord:
    out: list = []
    for x in letters:
        x = _as_letter(x)
        if out and out[-1] == -x:
            out.pop()
        else:
            out.append(x)
    return tuple(out)


def is_reduced(w: Sequence[int]) -> bool:
    return all(a != -b for a, b in zip(w, w[1:])) and all(x != 0 for x in w)


def inverse_word(w: Sequence[int]) -> FreeWord:
    return tuple(-x for x in reversed(w))


def power_word(var: int, k: int) -> FreeWord:
    return (var if k > 0 else -var,) * abs(k)


def letter_key(x: int) -> tuple:
    return (abs(x), x < 0)


def word_key(w: Sequence[int]) -> tuple:
    return (len(w), tuple(letter_key(x) for x in w))


@dataclass(frozen=True)
class GropMorphism:
    source: int
    words: tuple

    def __init__(self, source: int, words: Iterable[Iterable]):
        ws = tuple(tuple(_as_letter(x) for x in w) for w in words)
        for w in ws:
            if not is_reduced(w):
                raise ValueError(f"word {w} is not freely reduced")
            if any(abs(x) > source for x in w):
                raise DimensionError(f"word {w} uses a variable beyond x{source}")
        object.__setattr__(self, "source", int(source))
        object.__setattr__(self, "words", ws)

    @classmethod
    def reduced(cls, source: int, words: Iterable[Iterable]) -> "GropMorphism":
        return cls(source, [reduce_word(w) for w in words])

    @property
    def target(self) -> int:
        return len(self.words)

    def sort_key(self) -> tuple:
        return (self.source, self.target, tuple(word_key(w) for w in self.words))

    def __lt__(self, other: "GropMorphism"):
        return self.sort_key() < other.sort_key()

    def __str__(self):
        from .syntax import format_morphism
        return format_morphism(self)

    def occurrences(self) -> list:
        """(slot, position, letter) for every letter in global left-to-right order."""
        return [(s, p, x) for s, w in enumerate(self.words) for p, x in enumerate(w)]


def identity(n: int) -> GropMorphism:
    return GropMorphism(n, [(i,) for i in range(1, n + 1)])


def substitute(w: Sequence[int], images: Sequence[Sequence[int]]) -> FreeWord:
    out: list = []
    for x in w:
        out.extend(images[x - 1] if x > 0 else inverse_word(images[-x - 1]))
    return reduce_word(out)


def compose(g: GropMorphism, f: GropMorphism) -> GropMorphism:
    """g∘f for f: n -> m and g: m -> l: substitute f's words into g."""
    if g.source != f.target:
        raise DimensionError(f"cannot compose: {g.source} != {f.target}")
    return GropMorphism(f.source, [substitute(w, f.words) for w in g.words])


def compose_all(*ms: GropMorphism) -> GropMorphism:
    out = ms[-1]
    for g in reversed(ms[:-1]):
        out = compose(g, out)
    return out


def shift_word(w: Sequence[int], k: int) -> FreeWord:
    return tuple(x + k if x > 0 else x - k for x in w)


def free_product(f: GropMorphism, g: GropMorphism) -> GropMorphism:
    return GropMorphism(f.source + g.source, list(f.words) + [shift_word(w, f.source) for w in g.words])


def free_product_all(ms: Sequence[GropMorphism]) -> GropMorphism:
    out = GropMorphism(0, [])
    for m in ms:
        out = free_product(out, m)
    return out


DELTA = GropMorphism(1, [(1,), (1,)])
NABLA = GropMorphism(2, [(1, 2)])
GAMMA = GropMorphism(1, [(-1,)])
ETA = GropMorphism(0, [()])
EPSILON = GropMorphism(1, [])


def iterated_diagonal(X: int, n: int) -> GropMorphism:
    return GropMorphism(X, [(i,) for _ in range(n) for i in range(1, X + 1)])


def tau(i: int, Xs: Sequence[int]) -> GropMorphism:
    """Identity on all blocks except block i (1-based), whose variables are sent to e."""
    if not 1 <= i <= len(Xs):
        raise DimensionError("block index out of range")
    words, v = [], 0
    for b, X in enumerate(Xs, start=1):
        for _ in range(X):
            v += 1
            words.append(() if b == i else (v,))
    return GropMorphism(v, words)


def inner_conjugation(n: int, by: Sequence[int]) -> GropMorphism:
    w = reduce_word(by)
    return GropMorphism.reduced(n, [w + (i,) + inverse_word(w) for i in range(1, n + 1)])


def permutation_morphism(pi: Sequence[int]) -> GropMorphism:
    """[x_{pi(1)}|...|x_{pi(N)}]_N with pi given 0-based."""
    return GropMorphism(len(pi), [(p + 1,) for p in pi])


# ---------------------------------------------------------------- linear combinations

@dataclass(frozen=True)
class LinMorphism:
    source: int
    target: int
    terms: Mapping
    field: FieldSpec = dc_field(default=QQ)

    def __init__(self, source: int, target: int, terms: Mapping | Iterable = (), field: FieldSpec = QQ):
        items = terms.items() if isinstance(terms, Mapping) else terms
        acc: dict = {}
        for g, c in items:
            if (g.source, g.target) != (source, target):
                raise DimensionError(f"summand {g} is not {source}->{target}")
            axpy(acc, field.one, {g: field(c)}, field)
        object.__setattr__(self, "source", source)
        object.__setattr__(self, "target", target)
        object.__setattr__(self, "terms", dict(sorted(acc.items(), key=lambda kv: kv[0].sort_key())))
        object.__setattr__(self, "field", field)

    @classmethod
    def of(cls, g: GropMorphism, coef=1, field: FieldSpec = QQ) -> "LinMorphism":
        return cls(g.source, g.target, {g: coef}, field)

    @classmethod
    def zero(cls, source: int, target: int, field: FieldSpec = QQ) -> "LinMorphism":
        return cls(source, target, {}, field)

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        if not isinstance(other, LinMorphism):
            return NotImplemented
        return (self.source, self.target, self.field, self.terms) == (other.source, other.target, other.field, other.terms)

    def __hash__(self):
        return hash((self.source, self.target, tuple(self.terms)))

    def _combine(self, other: "LinMorphism", sign) -> "LinMorphism":
        acc = dict(self.terms)
        axpy(acc, self.field(sign), other.terms, self.field)
        return LinMorphism(self.source, self.target, acc, self.field)

    def __add__(self, other):
        return self._combine(other, 1)

    def __sub__(self, other):
        return self._combine(other, -1)

    def scale(self, c) -> "LinMorphism":
        c = self.field(c)
        return LinMorphism(self.source, self.target, {g: self.field.mul(c, x) for g, x in self.terms.items()}, self.field)

    def __neg__(self):
        return self.scale(-1)

    def items(self):
        return self.terms.items()

    def __str__(self):
        from .syntax import format_lin
        return format_lin(self)


def linear_compose(g, f) -> LinMorphism:
    """Bilinear composition of GropMorphism / LinMorphism operands."""
    field = next((x.field for x in (g, f) if isinstance(x, LinMorphism)), QQ)
    gl = g if isinstance(g, LinMorphism) else LinMorphism.of(g, 1, field)
    fl = f if isinstance(f, LinMorphism) else LinMorphism.of(f, 1, field)
    acc: dict = {}
    for a, x in gl.items():
        for b, y in fl.items():
            axpy(acc, field.mul(x, y), {compose(a, b): field.one}, field)
    return LinMorphism(fl.source, gl.target, acc, field)


def linear_free_product(f, g) -> LinMorphism:
    field = next((x.field for x in (f, g) if isinstance(x, LinMorphism)), QQ)
    fl = f if isinstance(f, LinMorphism) else LinMorphism.of(f, 1, field)
    gl = g if isinstance(g, LinMorphism) else LinMorphism.of(g, 1, field)
    acc: dict = {}
    for a, x in fl.items():
        for b, y in gl.items():
            axpy(acc, field.mul(x, y), {free_product(a, b): field.one}, field)
    return LinMorphism(fl.source + gl.source, fl.target + gl.target, acc, field)


def theta(field: FieldSpec = QQ) -> LinMorphism:
    return LinMorphism(1, 2, {GropMorphism(1, [(1,), (1,)]): 1, GropMorphism(1, [(), (1,)]): -1,
                              GropMorphism(1, [(1,), ()]): -1}, field)


def theta_insertion(n: int, i: int, field: FieldSpec = QQ) -> LinMorphism:
    """id_{i-1} ∗ θ ∗ id_{n-i} : n -> n+1."""
    if not 1 <= i <= n:
        raise DimensionError("insertion slot out of range")
    return linear_free_product(linear_free_product(identity(i - 1), theta(field)), identity(n - i))


def generators(field: FieldSpec = QQ) -> dict:
    return {"Delta": DELTA, "nabla": NABLA, "gamma": GAMMA, "eta": ETA, "epsilon": EPSILON, "theta": theta(field)}
