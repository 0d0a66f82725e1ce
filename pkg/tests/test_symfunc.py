import itertools
from fractions import Fraction as F

import pytest

from pairedhall import partitions as pt
from pairedhall.exactalg import LaurentRational, QPochInf, pochhammer
from pairedhall.symfunc import (DivergentProduct, LengthExceedsVars, SymPoly, b_lambda, cauchy_kernel,
                                cauchy_kernel_closed, cauchy_kernel_geometric, combine_hl, expand_in_hl,
                                hl_eval, hl_p, hl_q, principal_skew, skew, skew_single, two_tail_spec)

T = LaurentRational.t()
ONE = LaurentRational.const(1)


def m(lam, n):
    return SymPoly.monomial(lam, n)


def test_hl_p_examples():
    assert hl_p((1,), 2) == m((1,), 2)
    assert hl_p((2,), 2) == m((2,), 2) + m((1, 1), 2).scale(1 - T)
    assert hl_p((1, 1), 2) == m((1, 1), 2)
    with pytest.raises(LengthExceedsVars):
        hl_p((1, 1, 1), 2)


def test_hl_q_examples():
    assert hl_q((), 3) == SymPoly.one(3)
    assert hl_q((1,), 2) == m((1,), 2).scale(1 - T)
    assert hl_q((1, 1), 2) == m((1, 1), 2).scale((1 - T) * (1 - T ** 2))


def test_skew_examples():
    for lam in [(1,), (2, 1), (2, 2)]:
        assert skew("P", lam, lam, 2) == SymPoly.one(2)
    assert skew("P", (1,), (), 1) == m((1,), 1)
    assert skew("Q", (2,), (1,), 1) == m((1,), 1).scale(1 - T)
    assert skew("P", (1,), (2,), 2).is_zero()


def test_expand_in_hl_examples():
    assert expand_in_hl(hl_p((2, 1), 3)) == {(2, 1): ONE}
    assert expand_in_hl(m((2,), 2)) == {(2,): ONE, (1, 1): -(1 - T)}
    assert expand_in_hl(SymPoly(2)) == {}


def test_expand_then_combine_round_trip():
    f = m((2, 1), 3) * m((1,), 3) + m((3, 1), 3).scale(T ** 2)
    for tsub in [None, (1, 2), (-1, 1)]:
        assert combine_hl(expand_in_hl(f, tsub), 3, tsub) == f


def test_principal_examples():
    t = F(2, 7)
    assert principal_skew("Q", (2, 1), (), F(3, 5), t) == F(3, 5) ** 3 * t
    assert principal_skew("P", (1,), (), t, t) == t / (1 - t)
    assert principal_skew("P", (1,), (1,), F(5), t) == 1
    assert principal_skew("P", (1,), (2,), F(5), t) == 0
    # formal t: Q_(2,1)(1, t, ...) = t
    assert principal_skew("Q", (2, 1), (), ONE, T) == T


def test_two_tail_examples():
    t = F(1, 3)
    assert two_tail_spec((), F(1), F(1), t) == 1
    assert two_tail_spec((1,), F(1), F(1), t) == 2 / (1 - t)
    for u0 in range(3):
        assert two_tail_spec((1,), t ** (1 + u0), t, t) == (t ** (1 + u0) + t) / (1 - t)
    assert two_tail_spec((1,), ONE, ONE, T) == 2 / (1 - T)


def test_cauchy_examples():
    assert cauchy_kernel([], [F(1, 2)], F(1, 3)) == 1
    assert cauchy_kernel([F(1, 2)], [F(1, 2)], 0) == F(4, 3)
    with pytest.raises(DivergentProduct):
        cauchy_kernel([F(2)], [F(1, 2)], 0)
    t = F(1, 3)
    direct = 1.0
    for j in range(1, 60):
        direct /= 1 - float(t) ** j
    v, err = cauchy_kernel_geometric(t, 1, t, 1e-12)
    assert abs(v - direct) <= err + 1e-12
    closed = cauchy_kernel_closed(t, 1, t)
    assert closed == QPochInf(t, t)
    assert abs(1 / closed.value(1e-15)[0] - direct) < 1e-12


def test_definition_matches_branching_small():
    for lam in pt.iterate(4):
        for n in range(max(len(lam), 1), 5):
            assert hl_p(lam, n, method="definition") == hl_p(lam, n)


def test_stability():
    for lam in pt.iterate(5):
        for n in range(max(len(lam), 1), 5):
            assert hl_p(lam, n + 1).restrict(n) == hl_p(lam, n)


def _points(k, seed):
    base = [F(1, 2), F(-1, 3), F(2, 5), F(3, 7), F(-1, 4), F(1, 6)]
    return [base[(seed + i) % len(base)] for i in range(k)]


def test_skew_consistency():
    t = F(3, 11)
    for lam in pt.iterate(4):
        for k in (1, 2):
            for n in range(1, 5):
                if len(lam) > n + k:
                    continue
                xs, ys = _points(k, 0), _points(n, 3)
                whole = hl_p(lam, n + k).evaluate(xs + ys, t)
                parts = sum((skew("P", lam, mu, k).evaluate(xs, t) * hl_p(mu, n).evaluate(ys, t)
                             for mu in pt.subpartitions(lam) if len(mu) <= n), F(0))
                assert whole == parts


def test_skew_solve_matches_branching():
    for lam in pt.iterate(4):
        for mu in pt.subpartitions(lam):
            for k in (1, 2):
                for kind in ("P", "Q"):
                    assert skew(kind, lam, mu, k) == skew(kind, lam, mu, k, method="branching")


def test_q_over_p_ratio():
    for lam in pt.iterate(4):
        for mu in pt.subpartitions(lam):
            ratio = b_lambda(lam) / b_lambda(mu)
            assert skew("Q", lam, mu, 2) == skew("P", lam, mu, 2).scale(ratio)


def test_principal_matches_truncated_evaluation():
    t, u, N = F(1, 3), F(1), 12
    xs = [u * t ** j for j in range(N + 1)]
    for lam in pt.iterate(4):
        for mu in pt.subpartitions(lam):
            for kind in ("P", "Q"):
                closed = principal_skew(kind, lam, mu, u, t)
                # one-variable branching, summed over chains of horizontal strips
                vals = {lam: F(1)}
                for x in xs:
                    nxt = {}
                    for nu, c in vals.items():
                        for rho in pt.subpartitions(nu):
                            if pt.contains(rho, mu) and pt.is_horizontal_strip(nu, rho):
                                nxt[rho] = nxt.get(rho, F(0)) + c * skew_single(kind, nu, rho, x, t)
                    vals = nxt
                assert abs(float(closed - vals.get(mu, 0))) < 10 * float(t) ** (N + 1)


def test_hl_eval_matches_symbolic():
    t = F(2, 9)
    xs = [F(1, 2), F(1, 3), F(-1, 5)]
    for lam in pt.iterate(4):
        if len(lam) <= 3:
            assert hl_eval(lam, xs, t) == hl_p(lam, 3).evaluate(xs, t)


def test_product_matches_expansion():
    n = 3
    for a, b in itertools.product([(1,), (2,), (1, 1)], [(1,), (2, 1)]):
        f, g = hl_p(a, n), hl_q(b, n)
        prod = {}
        for (ea, ca), (eb, cb) in itertools.product(f.expand().items(), g.expand().items()):
            e = tuple(x + y for x, y in zip(ea, eb))
            prod[e] = prod.get(e, LaurentRational.const(0)) + ca * cb
        prod = {e: c for e, c in prod.items() if not c.is_zero()}
        assert (f * g).expand() == prod


def test_squared_map():
    f = hl_p((2, 1), 2)
    xs, t = [F(1, 2), F(2, 3)], F(1, 5)
    assert f.squared().evaluate(xs, t) == f.evaluate([x * x for x in xs], t)


def test_json_round_trip():
    f = hl_q((2, 1), 3).subs_t(-1, 1)
    assert SymPoly.from_json(f.to_json()) == f
    assert f.to_json()["nvars"] == 3


def test_b_lambda():
    assert b_lambda((2, 2, 1)) == pochhammer(T, T, 2) * pochhammer(T, T, 1)
