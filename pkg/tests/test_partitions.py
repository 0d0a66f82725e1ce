from math import comb

import pytest
from hypothesis import given, strategies as st

from pairedhall import partitions as pt

small = st.lists(st.integers(1, 5), max_size=5).map(lambda xs: tuple(sorted(xs, reverse=True)))


def partition_numbers(n):
    # Euler's recurrence, independent of the iterator
    p = [1] + [0] * n
    for k in range(1, n + 1):
        for i in range(k, n + 1):
            p[i] += p[i - k]
    return p


@pytest.mark.parametrize("lam,expected", [((), ()), ((2, 1), (2, 1)), ((3, 1), (2, 1, 1))])
def test_conjugate_examples(lam, expected):
    assert pt.conjugate(lam) == expected


@pytest.mark.parametrize("lam,expected", [
    ((), (0, 0, {})),
    ((2, 2, 1), (5, 4, {2: 2, 1: 1})),
    ((3, 1), (4, 1, {3: 1, 1: 1})),
])
def test_weight_n_mult_examples(lam, expected):
    assert pt.weight_n_mult(lam) == expected


@pytest.mark.parametrize("lam,nu,expected", [((), (3, 1), 0), ((2, 1), (1, 1), 4), ((3,), (2,), 2)])
def test_conj_dot_examples(lam, nu, expected):
    assert pt.conj_dot(lam, nu) == expected


def test_doubling_examples():
    assert pt.double_interleave((2, 1)) == (2, 2, 1, 1)
    assert pt.halve_doubled((2, 2, 1, 1)) == (2, 1)
    with pytest.raises(pt.NotDoubled):
        pt.halve_doubled((2, 1))


def test_iterate_examples():
    assert list(pt.iterate(2)) == [(), (1,), (2,), (1, 1)]
    assert list(pt.iterate(3, max_length=1)) == [(), (1,), (2,), (3,)]
    # 1+1+2+3+5+7 = 19 including (); 18 nonempty
    assert len(list(pt.iterate(5))) == 19
    assert sum(1 for l in pt.iterate(5) if l) == 18


def test_iterate_counts_match_partition_numbers():
    p = partition_numbers(10)
    for n in range(11):
        assert len(list(pt.of_weight(n))) == p[n]
    assert len(list(pt.iterate(10))) == sum(p)


def test_iterate_respects_bounds_once():
    got = list(pt.iterate(9, max_part=3, max_length=3))
    assert len(got) == len(set(got))
    assert all(len(l) <= 3 and (not l or l[0] <= 3) for l in got)
    assert len(got) == 20  # partitions in a 3x3 box: C(6,3)


def test_canonical_form_and_parse():
    assert pt.make([2, 1, 0, 0]) == (2, 1)
    assert pt.parse("") == ()
    assert pt.parse("3,1,1") == (3, 1, 1)
    with pytest.raises(ValueError):
        pt.make([1, 2])


def test_invariants_up_to_weight_8():
    for lam in pt.iterate(8):
        c = pt.conjugate(lam)
        assert pt.conjugate(c) == lam
        assert pt.weight(c) == pt.weight(lam)
        cc = c + (0,)
        for i, m in pt.multiplicities(lam).items():
            assert m == cc[i - 1] - cc[i]
        assert pt.n_of(lam) == sum(comb(x, 2) for x in c)


def test_conj_dot_is_sum_of_minima():
    parts = list(pt.iterate(6))
    for lam in parts:
        for nu in parts:
            direct = sum(min(a, b) for a in lam for b in nu)
            assert pt.conj_dot(lam, nu) == pt.conj_dot(nu, lam) == direct


@given(small)
def test_double_then_halve(lam):
    assert pt.halve_doubled(pt.double_interleave(lam)) == lam


@given(small, small)
def test_skew_n_matches_difference_when_contained(lam, mu):
    if pt.contains(lam, mu):
        lc, mc = pt.conjugate(lam), pt.conjugate(mu)
        mc += (0,) * (len(lc) - len(mc))
        assert pt.skew_n(lam, mu) == sum(comb(a - b, 2) for a, b in zip(lc, mc))
