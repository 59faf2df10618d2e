import random
from itertools import product

import pytest
from hypothesis import given
from hypothesis import strategies as st

from hopfcorad.errors import ParseError
from hopfcorad.exactla import GF, QQ
from hopfcorad.grop import (
    DELTA, EPSILON, ETA, GAMMA, NABLA, AssWordTuple, B_expand, E_embed, GropMorphism, LieTupleMorphism,
    LinMorphism, ass_basis, compose, compose_ass, compose_lie, format_lin, format_morphism, free_product,
    identity, inner_conjugation, iterated_diagonal, linear_compose, parse_lin, parse_morphism, reduce_mod_I,
    reduce_morphism, reduce_word, tau, theta_insertion,
)


def words(n, max_len=4):
    return st.lists(st.sampled_from([i for i in range(-n, n + 1) if i]), max_size=max_len).map(reduce_word)


@st.composite
def morphisms(draw, n=None, m=None, max_len=4):
    n = draw(st.integers(0, 3)) if n is None else n
    m = draw(st.integers(0, 3)) if m is None else m
    if n == 0:
        return GropMorphism(0, [()] * m)
    return GropMorphism(n, [draw(words(n, max_len)) for _ in range(m)])


def closed_form(g: GropMorphism, field=QQ) -> LinMorphism:
    """Independent normal form: pick one letter per variable, keep those, weight by exponent signs."""
    occ = {v: [] for v in range(1, g.source + 1)}
    for s, p, x in g.occurrences():
        occ[abs(x)].append((s, p, x))
    terms: dict = {}
    for choice in product(*(occ[v] for v in range(1, g.source + 1))):
        keep = {(s, p): x for s, p, x in choice}
        sign = 1
        for x in keep.values():
            sign *= 1 if x > 0 else -1
        ws = [tuple(abs(keep[(s, p)]) for p in range(len(w)) if (s, p) in keep) for s, w in enumerate(g.words)]
        h = GropMorphism(g.source, ws)
        terms[h] = terms.get(h, 0) + sign
    return LinMorphism(g.source, g.target, terms, field)


# ---------------------------------------------------------------- words and composition

def test_reduce_word_examples():
    assert reduce_word([1, -1]) == ()
    assert reduce_word([2, 1, -1, 2]) == (2, 2)
    assert reduce_word([1, 2, -1]) == (1, 2, -1)


def test_composition_examples():
    assert compose(NABLA, DELTA) == GropMorphism(1, [(1, 1)])
    assert compose(GAMMA, GAMMA) == identity(1)
    assert compose(EPSILON, ETA) == GropMorphism(0, [])
    assert free_product(identity(1), identity(1)) == identity(2)
    assert free_product(DELTA, identity(1)) == GropMorphism(2, [(1,), (1,), (2,)])


def test_named_morphisms():
    assert iterated_diagonal(1, 2) == DELTA
    assert inner_conjugation(2, (1,)) == GropMorphism(2, [(1,), (1, 2, -1)])
    assert tau(1, [1, 1]) == GropMorphism(2, [(), (2,)])


@given(st.data())
def test_composition_is_associative(data):
    a = data.draw(morphisms())
    b = data.draw(morphisms(n=a.target))
    c = data.draw(morphisms(n=b.target))
    assert compose(c, compose(b, a)) == compose(compose(c, b), a)
    assert compose(identity(a.target), a) == a == compose(a, identity(a.source))


@given(st.data())
def test_interchange_law(data):
    f1 = data.draw(morphisms(max_len=3))
    f0 = data.draw(morphisms(m=f1.source, max_len=3))
    g1 = data.draw(morphisms(max_len=3))
    g0 = data.draw(morphisms(m=g1.source, max_len=3))
    lhs = compose(free_product(f1, g1), free_product(f0, g0))
    assert lhs == free_product(compose(f1, f0), compose(g1, g0))


# ---------------------------------------------------------------- syntax

@given(morphisms())
def test_print_parse_round_trip(g):
    assert parse_morphism(format_morphism(g)) == g


@given(st.data())
def test_linear_round_trip(data):
    n, m = data.draw(st.integers(1, 3)), data.draw(st.integers(0, 3))
    gs = data.draw(st.lists(morphisms(n=n, m=m), min_size=1, max_size=4))
    cs = data.draw(st.lists(st.fractions(max_denominator=4).filter(bool), min_size=len(gs), max_size=len(gs)))
    f = LinMorphism(n, m, list(zip(gs, cs)))
    assert parse_lin(format_lin(f), shape=(n, m)) == f


def test_parse_examples():
    assert parse_morphism("[x2 x1 x2]_2") == GropMorphism(2, [(2, 1, 2)])
    assert parse_morphism("[x1^-2|e]_1") == GropMorphism(1, [(-1, -1), ()])
    assert parse_lin("0", shape=(1, 1)) == LinMorphism.zero(1, 1)
    f = parse_lin("2*[x1|x1]_1 - [e|x1]_1")
    assert f.terms == {GropMorphism(1, [(1,), (1,)]): 2, GropMorphism(1, [(), (1,)]): -1}


@pytest.mark.parametrize("text,pos", [("[x1", 3), ("[x1]_", 5), ("[x1|y]_1", 4), ("3*", 2)])
def test_parse_errors_report_position(text, pos):
    with pytest.raises(ParseError) as err:
        parse_lin(text)
    assert err.value.pos == pos
    assert f"position {pos}" in str(err.value)


def test_parse_rejects_out_of_range_variable():
    with pytest.raises(Exception):
        parse_morphism("[x3]_2")


def test_finite_field_coefficients_print_signed():
    f = parse_lin("[x1]_1 - [x1^2]_1", field=GF(5))
    assert format_lin(f) == "-[x1^2]_1 + [x1]_1"


# ---------------------------------------------------------------- rewriting

@pytest.mark.parametrize("k", range(1, 7))
def test_power_law(k):
    assert reduce_morphism(GropMorphism(1, [(1,) * k])) == LinMorphism.of(identity(1), k)


def test_reduce_examples():
    assert format_lin(reduce_mod_I(parse_lin("[x2 x1 x2]_2"))) == "[x2x1]_2 + [x1x2]_2"
    assert reduce_mod_I(parse_lin("[x1|x1]_1 - [e|x1]_1 - [x1|e]_1")) == LinMorphism.zero(1, 2)
    assert format_lin(reduce_mod_I(parse_lin("[x1^3]_1"))) == "3*[x1]_1"


@pytest.mark.parametrize("n", range(1, 5))
def test_missing_variable_gives_zero(n):
    for i in range(1, n + 1):
        g = GropMorphism(n, [(j,) for j in range(1, n + 1) if j != i])
        assert not reduce_morphism(g)


@pytest.mark.parametrize("n", [1, 2, 3])
def test_monomial_law(n):
    rng = random.Random(n)
    for exps in product(range(-3, 4), repeat=n):
        sigma = rng.sample(range(1, n + 1), n)
        word = reduce_word([v if a > 0 else -v for v, a in zip(sigma, exps) for _ in range(abs(a))])
        prod_ = 1
        for a in exps:
            prod_ *= a
        expect = LinMorphism(n, 1, {GropMorphism(n, [tuple(sigma)]): prod_})
        assert reduce_morphism(GropMorphism(n, [word])) == expect


def test_ideal_generators_reduce_to_zero():
    rng = random.Random(11)
    for _ in range(300):
        n = rng.randint(1, 3)
        i = rng.randint(1, n)
        m = rng.randint(0, 3)
        g = GropMorphism.reduced(n + 1, [[rng.choice([v for v in range(-n - 1, n + 2) if v])
                                          for _ in range(rng.randint(0, 3))] for _ in range(m)])
        assert not reduce_mod_I(linear_compose(g, theta_insertion(n, i)))


@given(morphisms(max_len=5))
def test_normal_form_matches_closed_form(g):
    assert reduce_morphism(g) == closed_form(g)


@given(morphisms(max_len=5), st.integers(0, 2 ** 32))
def test_random_strategies_agree(g, seed):
    assert reduce_morphism(g, rng=random.Random(seed)) == reduce_morphism(g)


@given(st.data())
def test_left_ideal(data):
    n = data.draw(st.integers(1, 3))
    i = data.draw(st.integers(1, n))
    g = data.draw(morphisms(n=n + 1, max_len=3))
    h = data.draw(morphisms(n=g.target, max_len=3))
    x = linear_compose(h, linear_compose(g, theta_insertion(n, i)))
    assert not reduce_mod_I(x)


# ---------------------------------------------------------------- operads

def test_ass_basis_counts():
    assert len(ass_basis(2, 2)) == 6
    for n in range(4):
        for m in range(1, 4):
            rising = 1
            for k in range(n):
                rising *= m + k
            assert len(ass_basis(n, m)) == rising
    assert ass_basis(1, 0) == []
    assert len(ass_basis(0, 0)) == 1


def test_embedding_examples():
    a = AssWordTuple(4, [(2, 3), (), (4, 1)])
    assert E_embed(a) == GropMorphism(4, [(2, 3), (), (4, 1)])
    assert E_embed(AssWordTuple(3, [(1,), (2,), (3,)])) == identity(3)


def test_embedding_is_functorial():
    rng = random.Random(5)
    for _ in range(200):
        n, m, l = rng.randint(0, 3), rng.randint(1, 3), rng.randint(1, 3)
        a = rng.choice(ass_basis(n, m))
        b = rng.choice(ass_basis(m, l))
        assert E_embed(compose_ass(b, a)) == compose(E_embed(b), E_embed(a))


def test_normal_forms_of_embedded_tuples_are_fixed():
    for a in ass_basis(3, 2):
        assert reduce_morphism(E_embed(a)) == LinMorphism.of(E_embed(a))


def test_bracket_expansion():
    assert B_expand(LieTupleMorphism(1, [1])) == {AssWordTuple(1, [(1,)]): 1}
    assert B_expand(LieTupleMorphism(2, [(1, 2)])) == {AssWordTuple(2, [(1, 2)]): 1, AssWordTuple(2, [(2, 1)]): -1}
    got = B_expand(LieTupleMorphism(3, [((1, 2), 3)]))
    assert got == {AssWordTuple(3, [w]): c for w, c in
                   [((1, 2, 3), 1), ((2, 1, 3), -1), ((3, 1, 2), -1), ((3, 2, 1), 1)]}


def test_lie_composition_with_unit_vanishes():
    l1 = LieTupleMorphism(1, [None, 1])
    l2 = LieTupleMorphism(2, [(1, 2)])
    assert compose_lie(l2, l1) is None
