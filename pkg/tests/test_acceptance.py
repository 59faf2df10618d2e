"""The twelve acceptance criteria, one test each, exact comparisons throughout."""
import functools
import random
from itertools import product

from conftest import CRITERIA
from hopfcorad import coalg, hopf
from hopfcorad import functor as fn
from hopfcorad.exactla import GF, QQ, span
from hopfcorad.grop import GropMorphism, LinMorphism, identity, linear_compose, reduce_mod_I, reduce_word, theta_insertion

F2, F3, F5 = GF(2), GF(3), GF(5)


def criterion(k):
    def wrap(test):
        @functools.wraps(test)
        def run():
            try:
                test()
            except BaseException:
                CRITERIA[k] = "FAIL"
                print(f"CRITERION {k}: FAIL")
                raise
            CRITERIA[k] = "PASS"
            print(f"CRITERION {k}: PASS")
        return run
    return wrap


def group(g, field=QQ):
    return hopf.group_algebra(g, field)


def filtration_equality_builders():
    return {
        "F2[t]/t^2": hopf.truncated_polynomial_hopf(2, 1),
        "F2[t]/t^4": hopf.truncated_polynomial_hopf(2, 2),
        "F3[t]/t^3": hopf.truncated_polynomial_hopf(3, 1),
        "QZ/2": group(hopf.cyclic_group(2)),
        "dual F2[t]/t^4": hopf.dual_hopf(hopf.truncated_polynomial_hopf(2, 2)),
    }


@criterion(1)
def test_criterion_01_digit_sum_filtration():
    D = 40
    for p in (2, 3, 5):
        w = hopf.polynomial_window(GF(p), D)
        P = coalg.coradical_filtration(w.coalgebra, 8)
        for n in range(9):
            expected = [i for i in range(D + 1) if hopf.digit_sum(i, p) <= n]
            assert P[n].dim == len(expected), (p, n)
            assert P[n] == span(D + 1, GF(p), [{i: 1} for i in expected])


@criterion(2)
def test_criterion_02_char0_degree_filtration():
    w = hopf.polynomial_window(QQ, 8)
    for n, P in enumerate(coalg.coradical_filtration(w.coalgebra, 8)):
        assert P == span(9, QQ, [{i: 1} for i in range(n + 1)])


@criterion(3)
def test_criterion_03_shuffle_filtration():
    for field in (QQ, F2):
        sh = hopf.shuffle_window(field, 2, 4)
        assert [P.dim for P in coalg.coradical_filtration(sh.coalgebra, 4)] == [1, 3, 7, 15, 31]


@criterion(4)
def test_criterion_04_finite_char0_collapse():
    for g in (hopf.cyclic_group(2), hopf.cyclic_group(3), hopf.cyclic_group(4), hopf.symmetric_group(3)):
        h = group(g)
        one = span(h.dim, QQ, [h.unit])
        assert all(P == one for P in coalg.coradical_filtration(h.coalgebra, g.order))


@criterion(5)
def test_criterion_05_filtration_equality():
    for name, h in filtration_equality_builders().items():
        res = fn.corad_eq_poly_check(h, 4, 2)
        assert all(r["equal"] for r in res["rows"]), name


@criterion(6)
def test_criterion_06_outer_iff_bicommutative():
    builders = dict(filtration_equality_builders())
    builders["QS3"] = group(hopf.symmetric_group(3))
    builders["F5S3"] = group(hopf.symmetric_group(3), F5)
    for name, h in builders.items():
        assert fn.outer_check(h)["outer"] == hopf.is_commutative(h), name
    assert fn.conjugation_identity_check(builders["QS3"])


@criterion(7)
def test_criterion_07_rewriting_laws():
    for k in range(1, 7):
        g = GropMorphism(1, [(1,) * k])
        assert reduce_mod_I(LinMorphism.of(g)) == LinMorphism.of(identity(1), k)

    rng = random.Random(0)
    for n in (1, 2, 3):
        for exps in product(range(-3, 4), repeat=n):
            sigma = rng.sample(range(1, n + 1), n)
            w = reduce_word([v if a > 0 else -v for v, a in zip(sigma, exps) for _ in range(abs(a))])
            coeff = 1
            for a in exps:
                coeff *= a
            expect = LinMorphism(n, 1, {GropMorphism(n, [tuple(sigma)]): coeff})
            assert reduce_mod_I(LinMorphism.of(GropMorphism(n, [w]))) == expect

    def rand_morphism(n, m, max_len):
        letters = [v for v in range(-n, n + 1) if v]
        return GropMorphism.reduced(n, [[rng.choice(letters) for _ in range(rng.randint(0, max_len))] if n else []
                                        for _ in range(m)])

    for _ in range(500):
        n = rng.randint(1, 3)
        i = rng.randint(1, n)
        g = rand_morphism(n + 1, rng.randint(0, 3), 4)
        assert not reduce_mod_I(linear_compose(g, theta_insertion(n, i)))

    for _ in range(100):
        n, m = rng.randint(0, 3), rng.randint(0, 3)
        f = LinMorphism(n, m, [(rand_morphism(n, m, 5), rng.randint(-3, 3)) for _ in range(rng.randint(1, 3))])
        forms = {reduce_mod_I(f, random.Random(s)) for s in range(20)}
        assert forms == {reduce_mod_I(f)}


@criterion(8)
def test_criterion_08_primitive_part():
    for name, h in filtration_equality_builders().items():
        for n in range(4):
            assert fn.primitive_part_check(h, n), (name, n)


@criterion(9)
def test_criterion_09_q_versus_p():
    for h in filtration_equality_builders().values():
        F = fn.ExponentialModule(h)
        for n in range(4):
            for m in range(3):
                assert fn.Q_filtration(F, n, m) <= fn.poly_filtration(F, n, m)
    G = fn.ExponentialModule(hopf.dual_hopf(hopf.truncated_polynomial_hopf(2, 2)))
    assert [fn.Q_filtration(G, n, 1).dim for n in range(6)] == [1, 2, 2, 2, 2, 2]
    assert fn.poly_filtration(G, 3, 1).dim == 4
    # the clause below is stated for m <= 2; at m = 2 it contradicts Q_1 ⊆ P_1 (see the ledger)
    F = fn.ExponentialModule(hopf.truncated_polynomial_hopf(2, 1))
    for m in range(3):
        assert fn.Q_filtration(F, 1, m).dim == F.dim(m), f"m={m}: dim Q_1 = {fn.Q_filtration(F, 1, m).dim}"


def test_criterion_09_corrected_clause():
    """What does hold: Q_1 fills arity <= 1, Q_2 fills arity 2, and Q_1(2) = P_1(2)."""
    F = fn.ExponentialModule(hopf.truncated_polynomial_hopf(2, 1))
    assert fn.Q_filtration(F, 1, 0).is_full() and fn.Q_filtration(F, 1, 1).is_full()
    assert fn.Q_filtration(F, 1, 2) == fn.poly_filtration(F, 1, 2)
    assert fn.Q_filtration(F, 1, 2).dim == 3
    assert fn.Q_filtration(F, 2, 2).is_full()


@criterion(10)
def test_criterion_10_goodness_suite():
    char0 = [group(hopf.cyclic_group(2)), group(hopf.cyclic_group(3)), group(hopf.cyclic_group(4)),
             group(hopf.symmetric_group(3)),
             group(hopf.direct_product(hopf.cyclic_group(2), hopf.cyclic_group(2)))]
    for h in char0:
        assert hopf.is_cocommutative(h) and hopf.is_good(h, 3).good

    rng = random.Random(0)
    builders = char0 + list(filtration_equality_builders().values())
    for h in builders:
        P = coalg.coradical_filtration(h.coalgebra, 2)
        for _ in range(50):
            n, m = rng.randint(0, 2), rng.randint(0, 2)
            a = _random_element(P[n], rng)
            b = _random_element(P[m], rng)
            assert hopf.shuffle_compat_check(h, a, b, n, m)

    for h in builders:
        checks = hopf.symmetry_and_goodness_checks(h, 3)
        good = hopf.is_good(h, 3).good
        for n, r in checks.items():
            assert r["f_h_equals_s"], n
            if good:
                assert r["sigma_invariant"], n


def _random_element(s, rng):
    f = s.field
    out = {}
    for v in s.basis:
        c = f(rng.randint(-2, 2))
        for k, x in v.items():
            y = f.add(out.get(k, f.zero), f.mul(c, x))
            if y:
                out[k] = y
            else:
                out.pop(k, None)
    return out


@criterion(11)
def test_criterion_11_structural_decomposition():
    small = [hopf.truncated_polynomial_hopf(2, 1), hopf.truncated_polynomial_hopf(3, 1),
             group(hopf.cyclic_group(2)), group(hopf.cyclic_group(3)), group(hopf.cyclic_group(3), F2)]
    tuples = [t for k in range(1, 4) for t in product(range(3), repeat=k) if sum(t) <= 4]
    for h in small:
        assert h.dim <= 3
        F = fn.ExponentialModule(h)
        for Xs in tuples:
            ok, pieces = fn.decomposition_check(F, list(Xs), details=True)
            assert ok, (h.labels, Xs)
            assert sum(p[2] for p in pieces) == h.dim ** sum(Xs)


@criterion(12)
def test_criterion_12_bimodule_degree():
    for n in range(1, 4):
        D = fn.DeltaCatModule(n)
        assert fn.cross_effect(D, [1] * (n + 1)).dim == 0
        assert fn.cross_effect(D, [1] * n).dim != 0
