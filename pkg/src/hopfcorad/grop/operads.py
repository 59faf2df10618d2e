"""Word categories of the unital associative and Lie operads.

A morphism n -> m of the associative word category is an m-tuple of words in
which every variable x_1..x_n occurs exactly once.  Lie morphisms carry a
bracket tree per output slot; trees are ints (leaves) or pairs.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Mapping

from ..errors import DimensionError
from .words import GropMorphism


@dataclass(frozen=True, order=True)
class AssWordTuple:
    source: int
    words: tuple

    def __init__(self, source: int, words: Iterable[Iterable[int]]):
        ws = tuple(tuple(int(x) for x in w) for w in words)
        letters = sorted(x for w in ws for x in w)
        if letters != list(range(1, source + 1)):
            raise ValueError(f"{ws} does not use each of x1..x{source} exactly once")
        object.__setattr__(self, "source", source)
        object.__setattr__(self, "words", ws)

    @property
    def target(self) -> int:
        return len(self.words)

    def __str__(self):
        return " ⊗ ".join("".join(f"x{i}" for i in w) or "1" for w in self.words)


def ass_identity(n: int) -> AssWordTuple:
    return AssWordTuple(n, [(i,) for i in range(1, n + 1)])


def ass_basis(n: int, m: int) -> list:
    """All tuples n -> m, sorted; there are m(m+1)...(m+n-1) of them."""
    layer = [tuple(() for _ in range(m))]
    for v in range(1, n + 1):
        nxt = []
        for t in layer:
            for s, w in enumerate(t):
                for p in range(len(w) + 1):
                    nxt.append(t[:s] + (w[:p] + (v,) + w[p:],) + t[s + 1:])
        layer = nxt
    return sorted(AssWordTuple(n, t) for t in layer)


def compose_ass(b: AssWordTuple, a: AssWordTuple) -> AssWordTuple:
    """b∘a for a: n -> m, b: m -> l."""
    if b.source != a.target:
        raise DimensionError("cannot compose word tuples")
    return AssWordTuple(a.source, [tuple(x for j in w for x in a.words[j - 1]) for w in b.words])


def E_embed(a: AssWordTuple) -> GropMorphism:
    return GropMorphism(a.source, a.words)


# ---------------------------------------------------------------- Lie trees

def tree_leaves(t) -> list:
    if t is None:
        return []
    if isinstance(t, int):
        return [t]
    left, right = t
    return tree_leaves(left) + tree_leaves(right)


def tree_str(t) -> str:
    if t is None:
        return "1"
    if isinstance(t, int):
        return f"x{t}"
    return f"[{tree_str(t[0])},{tree_str(t[1])}]"


@dataclass(frozen=True)
class LieTupleMorphism:
    source: int
    blocks: tuple

    def __init__(self, source: int, blocks: Iterable):
        bs = tuple(blocks)
        leaves = sorted(x for b in bs for x in tree_leaves(b))
        if leaves != list(range(1, source + 1)):
            raise ValueError("tree leaves must biject with x1..xn")
        object.__setattr__(self, "source", source)
        object.__setattr__(self, "blocks", bs)

    @property
    def target(self) -> int:
        return len(self.blocks)

    def __str__(self):
        return " ⊗ ".join(tree_str(b) for b in self.blocks)


def lie_identity(n: int) -> LieTupleMorphism:
    return LieTupleMorphism(n, list(range(1, n + 1)))


def expand_tree(t) -> dict:
    """Word -> coefficient, with [u,v] = uv - vu."""
    if t is None:
        return {(): 1}
    if isinstance(t, int):
        return {(t,): 1}
    out: dict = {}
    left, right = expand_tree(t[0]), expand_tree(t[1])
    for u, a in left.items():
        for v, b in right.items():
            for w, s in ((u + v, 1), (v + u, -1)):
                c = out.get(w, 0) + s * a * b
                if c:
                    out[w] = c
                else:
                    out.pop(w, None)
    return out


def B_expand(l: LieTupleMorphism) -> dict:
    """AssWordTuple -> integer coefficient."""
    acc: dict = {(): 1}
    for b in l.blocks:
        nxt: dict = {}
        for ws, c in acc.items():
            for w, d in expand_tree(b).items():
                key = ws + (w,)
                nxt[key] = nxt.get(key, 0) + c * d
        acc = {k: v for k, v in nxt.items() if v}
    return {AssWordTuple(l.source, ws): c for ws, c in sorted(acc.items())}


def _substitute_tree(t, images):
    """Replace leaf j by images[j-1]; None when a unit meets a bracket (the result is 0)."""
    if isinstance(t, int):
        return images[t - 1]
    left = _substitute_tree(t[0], images)
    right = _substitute_tree(t[1], images)
    if left is None or right is None:
        raise _Vanishes
    return (left, right)


class _Vanishes(Exception):
    pass


def compose_lie(l2: LieTupleMorphism, l1: LieTupleMorphism) -> LieTupleMorphism | None:
    """l2∘l1; returns None for the zero morphism."""
    if l2.source != l1.target:
        raise DimensionError("cannot compose Lie morphisms")
    blocks = []
    try:
        for b in l2.blocks:
            blocks.append(None if b is None else _substitute_tree(b, l1.blocks))
    except _Vanishes:
        return None
    return LieTupleMorphism(l1.source, blocks)


def linear_compose_ass(b: Mapping, a: Mapping) -> dict:
    out: dict = {}
    for y, c in b.items():
        for x, d in a.items():
            k = compose_ass(y, x)
            out[k] = out.get(k, 0) + c * d
    return {k: v for k, v in out.items() if v}
