"""Rewriting modulo the left ideal generated by theta.

Every rule is an instance of the theta relation: for a word tuple w and a
split of the occurrences of x_i into A ⊔ B,

    [w] ≡ [w without B] + [w without A]

(rename B to a fresh variable, precompose with id∗θ∗id).  Two consequences
are used: a summand missing a variable is ≡ 0, and a lone x_i^{-1} may be
replaced by -x_i.
"""
from __future__ import annotations

import random
from collections import defaultdict

from ..exactla import QQ, axpy
from .words import GropMorphism, LinMorphism, reduce_word


def _occurrences(g: GropMorphism) -> dict:
    """variable -> list of (slot, position) in global left-to-right order."""
    occ: dict = defaultdict(list)
    for s, w in enumerate(g.words):
        for p, x in enumerate(w):
            occ[abs(x)].append((s, p))
    return occ


def _delete(g: GropMorphism, drop: set) -> GropMorphism:
    return GropMorphism(g.source, [reduce_word(x for p, x in enumerate(w) if (s, p) not in drop)
                                   for s, w in enumerate(g.words)])


def _flip(g: GropMorphism, at: tuple) -> GropMorphism:
    s0, p0 = at
    return GropMorphism(g.source, [tuple(-x if (s, p) == (s0, p0) else x for p, x in enumerate(w))
                                   for s, w in enumerate(g.words)])


def is_normal(g: GropMorphism) -> bool:
    letters = [x for w in g.words for x in w]
    return sorted(letters) == list(range(1, g.source + 1))


def rewrite_step(g: GropMorphism, rng: random.Random | None = None):
    """One rule application: list of (morphism, coefficient), or None when g is normal.

    Without rng the leftmost strategy is used; with rng the variable and the
    split are chosen at random.
    """
    occ = _occurrences(g)
    if any(v not in occ for v in range(1, g.source + 1)):
        return []
    multi = [v for v in occ if len(occ[v]) >= 2]
    if multi:
        if rng is None:
            v = min(multi, key=lambda u: occ[u][0])
            A = {occ[v][0]}
        else:
            v = rng.choice(sorted(multi))
            places = occ[v]
            k = rng.randint(1, len(places) - 1)
            A = set(rng.sample(places, k))
        B = set(occ[v]) - A
        return [(_delete(g, B), 1), (_delete(g, A), 1)]
    negs = [occ[v][0] for v in sorted(occ) if g.words[occ[v][0][0]][occ[v][0][1]] < 0]
    if negs:
        at = negs[0] if rng is None else rng.choice(negs)
        return [(_flip(g, at), -1)]
    return None


def reduce_mod_I(f: LinMorphism, rng: random.Random | None = None) -> LinMorphism:
    """Normal form supported on multilinear positive tuples, congruent to f mod I."""
    field = f.field
    done: dict = {}
    work: dict = dict(f.terms)
    while work:
        g = min(work, key=lambda m: m.sort_key()) if rng is None else rng.choice(list(work))
        c = work.pop(g)
        step = rewrite_step(g, rng)
        if step is None:
            axpy(done, field.one, {g: c}, field)
            continue
        for h, s in step:
            axpy(work, field.mul(c, field(s)), {h: field.one}, field)
    return LinMorphism(f.source, f.target, done, field)


def reduce_morphism(g: GropMorphism, field=None, rng: random.Random | None = None) -> LinMorphism:
    return reduce_mod_I(LinMorphism.of(g, 1, field or QQ), rng)
