import itertools

import pytest

from pairedhall.basering import (EvenPrimeUnsupported, conjugate, make_cyclic_ring, make_galois_ring,
                                 norm, smallest_nonresidue, valuation)


def test_galois_ring_examples():
    r = make_galois_ring(3, 1)
    assert r.c == 2 and r.residue_size == 9 and len(r.elements()) == 9
    r = make_galois_ring(5, 2)
    assert r.c == 2 and len(r.elements()) == 5 ** 4
    with pytest.raises(EvenPrimeUnsupported):
        make_galois_ring(2, 1)
    assert str(make_galois_ring(7, 1)) == "GR(7,1;3)"


def test_norm_examples():
    r = make_galois_ring(3, 1)
    assert norm(r(0)).value == 0
    assert norm(r(1, 1)).value == 2


@pytest.mark.parametrize("p", [3, 5])
def test_norm_fibres_on_units(p):
    r = make_galois_ring(p, 1)
    fibres = {}
    for x in r.elements():
        if x.is_unit():
            n = norm(x)
            assert n.is_unit()
            fibres[n.value] = fibres.get(n.value, 0) + 1
    assert sorted(fibres) == list(range(1, p))
    assert set(fibres.values()) == {p + 1}


def test_valuation_examples():
    z9 = make_cyclic_ring(3, 2)
    assert valuation(z9(0)) == 2
    assert valuation(z9(3)) == 1
    assert valuation(make_galois_ring(3, 1)(0, 1)) == 0


@pytest.mark.parametrize("p,k", [(3, 1), (5, 1)])
def test_conjugation_is_involutive_automorphism(p, k):
    r = make_galois_ring(p, k)
    els = r.elements()
    for x, y in itertools.product(els, els):
        assert conjugate(x + y) == conjugate(x) + conjugate(y)
        assert conjugate(x * y) == conjugate(x) * conjugate(y)
    for x in els:
        assert conjugate(conjugate(x)) == x
    for a in range(p ** k):
        assert conjugate(r(a)) == r(a)


@pytest.mark.parametrize("p,k", [(2, 3), (3, 2), (5, 2)])
def test_valuation_of_products(p, k):
    r = make_cyclic_ring(p, k)
    for x, y in itertools.product(r.elements(), r.elements()):
        assert valuation(x * y) == min(valuation(x) + valuation(y), k)


def test_valuation_of_galois_products():
    r = make_galois_ring(3, 2)
    els = r.elements()
    for x, y in itertools.product(els[::3], els[::5]):
        assert valuation(x * y) == min(valuation(x) + valuation(y), 2)


def test_printing_and_nonresidues():
    r = make_galois_ring(3, 1)
    assert str(r(2)) == "2" and str(r(1, 2)) == "1+2*x"
    assert [smallest_nonresidue(p) for p in (3, 5, 7, 11, 13)] == [2, 2, 3, 2, 2]
    with pytest.raises(ValueError):
        make_cyclic_ring(4, 1)
