"""Command line interface: ``hopfcorad analyze|reduce|verify|functor``.

Exit codes: 0 when every check passes, 1 on a verification failure,
2 on bad input or a structure that fails validation.
"""
from __future__ import annotations

import argparse
import random
import sys
from typing import Sequence

from . import coalg, functor as fn, hopf, registry
from .cache import MatrixCache
from .errors import HopfCoradError, WindowOverflowError
from .exactla import QQ, GF, Subspace, span
from .grop import format_lin, parse_lin, reduce_mod_I
from .report import Report

EXIT_OK, EXIT_FAIL, EXIT_INPUT = 0, 1, 2


def _bialgebra_facts(h, n_max: int, rep: Report):
    rows = []
    good_verdict = None
    try:
        pp = hopf.primitive_power_filtration(h, n_max)
        corad = coalg.coradical_filtration(h.coalgebra, n_max)
        for n in range(n_max + 1):
            rows.append([n, pp[n].dim, corad[n].dim, pp[n] == corad[n]])
        good = hopf.is_good(h, n_max)
        good_verdict = good.good
        witness = None
        if not good.good:
            witness = f"n={good.failing_n}: {coalg.format_vector(h.labels, good.witness, h.field)} ∉ P_1^{good.failing_n}"
        rep.check("good", "computed", "yes" if good.good else "no", witness)
    except WindowOverflowError as exc:
        rep.check("good", "computed", f"undecided within window ({exc})")
        return None
    rep.table("primitive_powers", ["n", "dim P1^n", "dim P_n", "equal"], rows)
    return good_verdict


def cmd_analyze(alg: str, n_max: int, field=QQ) -> Report:
    h = registry.resolve(alg, field)
    c = coalg.as_coalgebra(h)
    rep = Report("analyze", {"alg": alg, "field": str(c.field), "nmax": n_max})
    rep.check("validation", True, "structure axioms hold")
    P = coalg.coradical_filtration(c, n_max)
    rep.table("coradical", ["n", "dim P_n"], [[n, p.dim] for n, p in enumerate(P)])
    prim = coalg.primitives(c)
    deg = coalg.conilpotency_degree(c)
    scope = " (within window)" if c.window is not None else ""
    rep.table("summary", ["quantity", "value"], [
        ["dim", c.dim],
        ["dim Prim", prim.dim],
        ["conilpotency degree" + scope, deg],
        ["conilpotent" + scope, deg is not None],
    ])
    if isinstance(h, hopf.Bialgebra):
        good = _bialgebra_facts(h, n_max, rep)
        flags = [["commutative", hopf.is_commutative(h)], ["cocommutative", hopf.is_cocommutative(h)]]
        if good is not None:
            flags.append(["good" + (f" (n <= {n_max})"), good])
        if c.window is None:
            flags.append(["primitive", hopf.is_primitive_bialgebra(h)])
        rep.tables["summary"]["rows"].extend(flags)
    else:
        rep.tables["summary"]["rows"].append(["cocommutative", hopf.is_cocommutative(c)])
    return rep


def cmd_reduce(expr: str, field=QQ) -> Report:
    f = parse_lin(expr, field)
    nf = reduce_mod_I(f)
    rep = Report("reduce", {"expr": expr, "field": str(field)})
    rep.table("normal_form", ["input", "normal form"], [[format_lin(f), format_lin(nf)]])
    rep.normal_form = format_lin(nf)
    return rep


def _require(args, *names):
    missing = [n for n in names if getattr(args, n) is None]
    if missing:
        raise HopfCoradError("missing option(s): " + ", ".join("--" + m.replace("_", "-") for m in missing))


def cmd_verify(theorem: str, args, field=QQ) -> Report:
    rep = Report("verify", {"theorem": theorem, "field": str(field)})
    inp = rep.inputs

    def load():
        h = registry.resolve(args.alg, field)
        inp["field"] = str(h.field)
        return h
    if theorem == "corad-eq-poly":
        _require(args, "alg")
        n_max, x_max = args.nmax or 3, args.xmax if args.xmax is not None else 2
        inp.update(alg=args.alg, nmax=n_max, xmax=x_max)
        res = fn.corad_eq_poly_check(load(), n_max, x_max)
        rep.table("filtrations", ["n", "X", "dim poly", "dim corad", "equal"],
                  [[r["n"], r["X"], r["poly_dim"], r["corad_dim"], r["equal"]] for r in res["rows"]])
        for r in res["rows"]:
            rep.check(f"equal n={r['n']} X={r['X']}", r["equal"])
        for cres in res["conilpotency"]:
            rep.check(f"conilpotency X={cres['X']}", cres["consistent"], f"degree {cres['degree']}")
    elif theorem == "outer":
        _require(args, "alg")
        n = args.n or 3
        inp.update(alg=args.alg, n=n)
        h = load()
        res = fn.outer_check(h, n)
        comm = hopf.is_commutative(h)
        rep.check("inner conjugations act trivially", res["outer"], witness=res["witness"] and
                  f"{res['morphism']}: {res['witness']}")
        rep.check("outer iff commutative", res["outer"] == comm, f"commutative={comm}")
        rep.check("conjugation formula x(1)⊗x(2)yS(x(3))", fn.conjugation_identity_check(h))
    elif theorem == "lucas":
        p, m_max = args.p or 2, args.mmax or 64
        inp.update(p=p, mmax=m_max)
        bad = None
        for m in range(1, m_max + 1):
            L = hopf.digit_sum(m, p)
            for r in range(1, m + 2):
                if hopf.lucas_predicate(m, r, p) != (r <= L):
                    bad = bad or f"m={m} r={r}"
        rep.check("brute force agrees with digit sums", bad is None, witness=bad)
    elif theorem == "digit-sum":
        p, D, n_max = args.p or 2, args.D or 40, args.nmax if args.nmax is not None else 8
        inp.update(p=p, D=D, nmax=n_max)
        w = hopf.polynomial_window(GF(p), D)
        rows = []
        for n, P in enumerate(coalg.coradical_filtration(w.coalgebra, n_max)):
            expect = span(D + 1, w.field, [{i: 1} for i in range(D + 1) if hopf.digit_sum(i, p) <= n])
            rows.append([n, P.dim, expect.dim, P == expect])
            rep.check(f"n={n}", P == expect)
        rep.table("digit_sum", ["n", "dim P_n", "#{i : L_p(i) <= n}", "equal"], rows)
    elif theorem == "shuffle":
        dimv, D = args.dimv or 2, args.D or 4
        n_max = args.nmax if args.nmax is not None else D
        inp.update(dimv=dimv, D=D, nmax=n_max)
        sh = hopf.shuffle_window(field, dimv, D)
        rows = []
        for n, P in enumerate(coalg.coradical_filtration(sh.coalgebra, n_max)):
            expect = span(sh.dim, field, [{i: 1} for i in range(sh.dim) if sh.degrees[i] <= n])
            rows.append([n, P.dim, expect.dim, P == expect])
            rep.check(f"n={n}", P == expect)
        rep.table("shuffle", ["n", "dim P_n", "dim ⊕ V^i (i<=n)", "equal"], rows)
    elif theorem == "goodness":
        _require(args, "alg")
        n_max = args.nmax or 3
        inp.update(alg=args.alg, nmax=n_max)
        h = load()
        res = hopf.is_good(h, n_max)
        applicable = h.field.characteristic == 0 and hopf.is_cocommutative(h)
        witness = None if res.good else f"n={res.failing_n}: {coalg.format_vector(h.labels, res.witness, h.field)}"
        rep.check("good", res.good if applicable else "computed",
                  "" if applicable else "not cocommutative over a field of characteristic 0", witness)
        for n, r in hopf.symmetry_and_goodness_checks(h, n_max).items():
            rep.check(f"f_n h_n = s_n n={n}", r["f_h_equals_s"])
            rep.check(f"Σ-invariance n={n}", r["sigma_invariant"] if r["good_at_n"] else "computed")
    elif theorem == "shuffle-compat":
        _require(args, "alg")
        trials, n_max = args.trials or 50, args.nmax or 2
        inp.update(alg=args.alg, trials=trials, seed=args.seed, nmax=n_max)
        h = load()
        rng = random.Random(args.seed)
        P = coalg.coradical_filtration(h.coalgebra, n_max)
        bad, done = None, 0
        for _ in range(trials):
            n, m = rng.randint(0, n_max), rng.randint(0, n_max)
            a, b = _random_vector(P[n], rng), _random_vector(P[m], rng)
            try:
                ok = hopf.shuffle_compat_check(h, a, b, n, m)
            except WindowOverflowError:
                continue
            done += 1
            if not ok and bad is None:
                bad = f"n={n} m={m}"
        rep.check("δ^{n+m}(ab) = δ^n(a) ⧢ δ^m(b)", bad is None, f"{done} pairs", bad)
    elif theorem == "q-in-p":
        _require(args, "alg")
        n_max, m_max = args.nmax or 3, args.mmax or 2
        inp.update(alg=args.alg, nmax=n_max, mmax=m_max)
        F = fn.ExponentialModule(load(), MatrixCache.from_env())
        rows = []
        for m in range(m_max + 1):
            for n in range(n_max + 1):
                Q, P = fn.Q_filtration(F, n, m), fn.poly_filtration(F, n, m)
                rows.append([n, m, Q.dim, P.dim, Q <= P])
                rep.check(f"Q_{n} ⊆ P_{n} at m={m}", Q <= P)
        rep.table("q_vs_p", ["n", "m", "dim Q_n", "dim P_n", "contained"], rows)
    elif theorem == "primitive-part":
        _require(args, "alg")
        n_max = args.nmax or 3
        inp.update(alg=args.alg, nmax=n_max)
        h = load()
        for n in range(n_max + 1):
            rep.check(f"primitive part = Prim^⊗{n}", fn.primitive_part_check(h, n))
    else:
        raise HopfCoradError(f"unknown theorem id {theorem!r}; known: {', '.join(THEOREMS)}")
    return rep


THEOREMS = ("corad-eq-poly", "outer", "lucas", "digit-sum", "shuffle", "goodness", "shuffle-compat",
            "q-in-p", "primitive-part")


def _random_vector(s: Subspace, rng: random.Random) -> dict:
    f = s.field
    out: dict = {}
    for v in s.basis:
        c = f(rng.randint(-3, 3))
        for k, x in v.items():
            y = f.add(out.get(k, f.zero), f.mul(c, x))
            if y:
                out[k] = y
            else:
                out.pop(k, None)
    return out


def cmd_functor(alg: str, what: str, args, field=QQ) -> Report:
    h = registry.resolve(alg, field)
    F = fn.ExponentialModule(h, MatrixCache.from_env())
    rep = Report("functor", {"alg": alg, "what": what, "field": str(h.field)})
    if what == "poly":
        X = args.X if args.X is not None else 1
        ns = [args.n] if args.n is not None else list(range((args.nmax if args.nmax is not None else 3) + 1))
        rep.inputs.update(X=X, n=ns)
        rep.table("poly", ["n", "X", "dim P_n(F)(X)", "dim F(X)"],
                  [[n, X, fn.poly_filtration(F, n, X).dim, F.dim(X)] for n in ns])
    elif what == "primitive-part":
        ns = [args.n] if args.n is not None else list(range((args.nmax if args.nmax is not None else 2) + 1))
        rep.inputs.update(n=ns)
        rep.table("primitive_part", ["n", "dim P(F)(n)", "dim F(n)"],
                  [[n, fn.primitive_part(F, n).dim, F.dim(n)] for n in ns])
    elif what == "Q":
        m = args.m if args.m is not None else 1
        n_max = args.nmax if args.nmax is not None else 3
        rep.inputs.update(m=m, nmax=n_max)
        rep.table("Q", ["n", "m", "dim Q_n(F)(m)", "dim F(m)"],
                  [[n, m, fn.Q_filtration(F, n, m).dim, F.dim(m)] for n in range(n_max + 1)])
    else:
        raise HopfCoradError(f"unknown --what {what!r}; use poly, primitive-part or Q")
    return rep


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--field", default="Q", help="Q or Fp:<prime> (default Q)")
    fmt = common.add_mutually_exclusive_group()
    fmt.add_argument("--json", action="store_true", help="JSON output")
    fmt.add_argument("--csv", action="store_true", help="CSV output")
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--trials", type=int, default=None)

    p = argparse.ArgumentParser(prog="hopfcorad", description=__doc__.splitlines()[0], parents=[common])
    sub = p.add_subparsers(dest="verb", required=True)

    a = sub.add_parser("analyze", parents=[common], help="filtrations and flags of an algebra")
    a.add_argument("alg")
    a.add_argument("--nmax", type=int, default=3)

    r = sub.add_parser("reduce", parents=[common], help="normal form of a morphism modulo the theta ideal")
    r.add_argument("expr")

    v = sub.add_parser("verify", parents=[common], help="run a named verification")
    v.add_argument("theorem", help=", ".join(THEOREMS))
    for name in ("nmax", "xmax", "p", "mmax", "D", "dimv", "n", "m"):
        v.add_argument(f"--{name}", type=int, default=None)
    v.add_argument("--alg", default=None)

    fnp = sub.add_parser("functor", parents=[common], help="filtrations of the exponential module")
    fnp.add_argument("alg")
    fnp.add_argument("--what", required=True, choices=["poly", "primitive-part", "Q"])
    for name in ("n", "X", "m", "nmax"):
        fnp.add_argument(f"--{name}", type=int, default=None)
    return p


def run(argv: Sequence[str] | None = None, out=None) -> int:
    out = out or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INPUT if exc.code else EXIT_OK
    try:
        field = registry.parse_field(args.field)
        if args.verb == "analyze":
            rep = cmd_analyze(args.alg, args.nmax, field)
        elif args.verb == "reduce":
            rep = cmd_reduce(args.expr, field)
        elif args.verb == "verify":
            rep = cmd_verify(args.theorem, args, field)
        else:
            rep = cmd_functor(args.alg, args.what, args, field)
    except HopfCoradError as exc:
        print(f"error: {exc}", file=sys.stderr)
        report = getattr(exc, "report", None)
        if report is not None:
            for axiom, witness in report.failures:
                print(f"  {axiom} fails at {witness}", file=sys.stderr)
        return EXIT_INPUT
    if args.json:
        out.write(rep.to_json() + "\n")
    elif args.csv:
        out.write(rep.to_csv())
    elif args.verb == "reduce":
        out.write(rep.normal_form + "\n")
    else:
        out.write(rep.to_text())
    return EXIT_OK if rep.ok else EXIT_FAIL


def main(argv: Sequence[str] | None = None) -> None:
    sys.exit(run(argv))


if __name__ == "__main__":
    main()
