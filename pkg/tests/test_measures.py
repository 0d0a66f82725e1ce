import math
from fractions import Fraction as F

import pytest

from pairedhall import measures as ms
from pairedhall import partitions as pt
from pairedhall.exactalg import LaurentRational
from pairedhall.modlat import count_paired_automorphisms

Q = LaurentRational.t()


def prod(f, n=200):
    return math.prod(f(j) for j in range(1, n))


def test_aut_formula_examples():
    assert ms.aut_formula("classical", (1,)) == Q - 1
    assert ms.aut_formula("alternating", (1,)) == Q ** 3 - Q
    assert ms.aut_formula("hermitian", (1,)) == Q + 1
    assert ms.aut_formula("classical", (1,), 3) == 2


@pytest.mark.parametrize("kind,primes", [("classical", (2, 3)), ("alternating", (2, 3)), ("hermitian", (3, 5))])
def test_aut_formula_matches_brute_force(kind, primes):
    for p in primes:
        for lam in [(1,), (2,), (1, 1)]:
            assert count_paired_automorphisms(kind, lam, p) == ms.aut_formula(kind, lam, p)


def test_u_prob_examples():
    v, err = ms.u_prob(ms.UMeasureSpec("nopairing", 0, 2, 14), ()).value()
    assert abs(v - prod(lambda j: 1 - 2.0 ** -j)) <= err + 1e-15
    v, _ = ms.u_prob(ms.UMeasureSpec("alternating", 0, 2, 14), (1,)).value()
    assert abs(v - 4 / 6 * prod(lambda j: 1 - 2.0 ** (-2 * j + 1))) < 1e-14
    r = ms.u_prob(ms.UMeasureSpec("hermitian", 0, 3, 14), (1,))
    assert r.aut_prefactor == F(1, 3) / (1 + F(1, 3)) == F(1, 4)
    assert abs(r.value()[0] - 0.25 * prod(lambda j: 1 - (-1) ** (j - 1) * 3.0 ** -j)) < 1e-14


@pytest.mark.parametrize("kind,qs", [("nopairing", (2, 3)), ("alternating", (2, 3)), ("hermitian", (3, 5))])
def test_two_forms_agree(kind, qs):
    for q in qs:
        for u in (0, 1):
            spec = ms.UMeasureSpec(kind, u, q, 14)
            for lam in pt.iterate(4):
                assert ms.u_prob_forms(spec, lam).agree


def test_forms_disagree_when_perturbed():
    spec = ms.UMeasureSpec("nopairing", 0, 3, 14)
    r = ms.u_prob_forms(spec, (2, 1))
    assert r.aut_prefactor * r.aut_product.head(3) != 2 * r.hl_prefactor * r.hl_product.head(3)


def test_hom_count_examples():
    for kind in ms.MEASURE_KINDS:
        assert ms.hom_count(kind, (), (2, 1), 5) == 1
    assert ms.hom_count("nopairing", (2, 1), (1, 1), 3) == 81
    assert ms.hom_count("hermitian", (1,), (1,), 3) == 9


def test_hom_moment_closed_examples():
    for q in (2, 3, 7):
        assert ms.hom_moment_closed("nopairing", 0, (1,), q) == 2
        assert ms.hom_moment_closed("nopairing", 1, (1,), q) == 1 + F(1, q)
        assert ms.hom_moment_closed("alternating", 0, (1,), q) == 1 + q
    assert ms.hom_moment_closed("nopairing", 1, (1,), Q) == 1 + 1 / Q
    assert ms.hom_moment_closed("alternating", 0, (1,), Q) == 1 + Q


def test_large_u_moment_tends_to_one():
    for kind in ms.MEASURE_KINDS:
        for nu in [(1,), (2,), (1, 1)]:
            assert abs(float(ms.hom_moment_closed(kind, 30, nu, 3)) - 1) < 1e-8


def test_empirical_nopairing_q3_L12():
    v, _ = ms.hom_moment_empirical("nopairing", 0, (1,), 3, 12)
    assert abs(v - 2) <= 1e-6


def test_empirical_alternating_q2_L12():
    v, _ = ms.hom_moment_empirical("alternating", 0, (1,), 2, 12)
    assert abs(v - 3) <= 1e-5


def test_empirical_hermitian_q3_L10():
    v, _ = ms.hom_moment_empirical("hermitian", 0, (1,), 3, 10)
    assert abs(v - float(ms.hom_moment_closed("hermitian", 0, (1,), 3))) <= 1e-5


@pytest.mark.parametrize("kind,q", [("nopairing", 3), ("alternating", 2), ("hermitian", 3)])
def test_empirical_converges_with_larger_box(kind, q):
    v, unassigned = ms.hom_moment_empirical(kind, 0, (1,), q, 30)
    assert abs(v - float(ms.hom_moment_closed(kind, 0, (1,), q))) < 1e-8
    assert unassigned < 1e-8


def test_masses_nonnegative_and_bounded():
    for kind, q in [("nopairing", 3), ("alternating", 3), ("hermitian", 5), ("hermitian", 3)]:
        rows, unassigned = ms.truncated_table(ms.UMeasureSpec(kind, 1, q, 14))
        assert all(pr >= 0 for _, pr in rows)
        assert 0 <= unassigned <= 1e-6


def test_table_order_and_rows():
    rows = ms.measure_rows(ms.UMeasureSpec("nopairing", 0, 3, 4))
    lams = [tuple(r["lambda"]) for r in rows]
    assert lams[:4] == [(), (1,), (2,), (1, 1)]
    assert all(a["cumprob"] <= b["cumprob"] for a, b in zip(rows, rows[1:]))


def test_sample_examples():
    assert set(ms.sample(ms.UMeasureSpec("nopairing", 0, 3, 0, tol=1.0), 7, 50)) == {()}
    spec = ms.UMeasureSpec("nopairing", 0, 3, 14)
    draws = ms.sample(spec, 12345, 10_000)
    p0 = prod(lambda j: 1 - 3.0 ** -j)
    freq = sum(d == () for d in draws) / len(draws)
    assert abs(freq - p0) <= 3 * math.sqrt(p0 * (1 - p0) / len(draws))
    assert ms.sample(spec, 99, 200) == ms.sample(spec, 99, 200)
    assert ms.sample(spec, 99, 200) != ms.sample(spec, 100, 200)


def test_insufficient_mass():
    with pytest.raises(ms.InsufficientMass):
        ms.sample(ms.UMeasureSpec("nopairing", 0, 2, 3), 0, 10)


def test_spec_validation():
    with pytest.raises(ValueError):
        ms.UMeasureSpec("nopairing", -1, 3, 4)
    with pytest.raises(ValueError):
        ms.UMeasureSpec("nopairing", 0, 1, 4)
    with pytest.raises(ValueError):
        ms.UMeasureSpec("symmetric", 0, 3, 4)
