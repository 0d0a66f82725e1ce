import itertools

import numpy as np
import pytest

from pairedhall import modlat
from pairedhall import partitions as pt
from pairedhall.exactalg import qbinomial
from pairedhall.modlat import (FiniteModule, PairedModule, SizeBound, count_G_classical, count_G_paired,
                               count_norm_sphere, count_paired_automorphisms, enumerate_submodules,
                               module_type, pairing_eval, perp, quotient_type, section_type)


def naive_submodules(lam, p):
    """Independent oracle: all subgroups generated by at most len(lam) elements, plain Python sets."""
    mods = [p ** a for a in lam]
    elems = list(itertools.product(*[range(m) for m in mods]))

    def span(gens):
        h = {tuple(0 for _ in mods)}
        for g in gens:
            new = set(h)
            frontier = list(h)
            while frontier:
                x = frontier.pop()
                y = tuple((a + b) % m for a, b, m in zip(x, g, mods))
                if y not in new:
                    new.add(y)
                    frontier.append(y)
            h = new
            # close under the sum with everything already present
            changed = True
            while changed:
                changed = False
                for a, b in itertools.product(list(h), list(h)):
                    s = tuple((x + y) % m for x, y, m in zip(a, b, mods))
                    if s not in h:
                        h.add(s)
                        changed = True
        return frozenset(h)

    return {span(gs) for gs in itertools.product(elems, repeat=len(lam))}


def test_enumerate_examples():
    assert len(enumerate_submodules(FiniteModule((1,), 2))) == 2
    assert len(enumerate_submodules(FiniteModule((1, 1), 2))) == 5
    assert len(enumerate_submodules(FiniteModule((2,), 3))) == 3


@pytest.mark.parametrize("lam,p", [((2, 1), 2), ((2, 2), 2), ((1, 1), 3), ((3, 1), 2), ((2, 1), 3)])
def test_enumerate_matches_naive_oracle(lam, p):
    m = FiniteModule(lam, p)
    got = {frozenset(s.elements()) for s in enumerate_submodules(m)}
    assert got == naive_submodules(lam, p)


@pytest.mark.parametrize("n,p", [(2, 2), (3, 2), (3, 3), (4, 2)])
def test_elementary_counts_are_gaussian_sums(n, p):
    expected = sum(qbinomial(n, k, p) for k in range(n + 1))
    assert len(enumerate_submodules(FiniteModule((1,) * n, p))) == expected


def test_size_bound():
    with pytest.raises(SizeBound):
        FiniteModule((3, 3, 3), 3)
    assert FiniteModule((3, 3, 3), 3, size_bound=None).size == 3 ** 9


def test_type_examples():
    m = FiniteModule((2,), 3)
    assert module_type(m.zero()) == ()
    pm = m.submodule([int(m.encode(np.array([[3]]))[0])])
    assert module_type(pm) == (1,)
    assert quotient_type(m, pm) == (1,)
    assert quotient_type(m, m.whole()) == ()
    assert quotient_type(m, m.zero()) == (2,)
    v = FiniteModule((1, 1), 2)
    diag = v.submodule([int(v.encode(np.array([[1, 1]]))[0])])
    assert module_type(diag) == (1,)
    assert module_type(FiniteModule((3, 1, 1), 2, size_bound=None).whole()) == (3, 1, 1)


def test_types_of_all_submodules_are_consistent():
    m = FiniteModule((2, 1), 3)
    for h in enumerate_submodules(m):
        sub, quo = module_type(h), quotient_type(m, h)
        assert 3 ** pt.weight(sub) == h.size
        assert pt.weight(sub) + pt.weight(quo) == 3


def test_pairing_examples():
    alt = PairedModule("alternating", (1,), 2)
    e1, e2 = alt.module.basis()[0], int(alt.module.encode(np.array([[0, 1]]))[0])
    assert pairing_eval(alt, e1, e2).value == 1
    for x in range(alt.module.size):
        assert pairing_eval(alt, x, x).value == 0
    her = PairedModule("hermitian", (1,), 3)
    e = her.module.basis()[0]
    assert str(pairing_eval(her, e, e)) == "1"


def test_perp_examples():
    alt = PairedModule("alternating", (1,), 2)
    m = alt.module
    assert perp(alt, m.zero()).size == m.size
    assert perp(alt, m.whole()).size == 1
    line = m.submodule([m.basis()[0]])
    assert perp(alt, line) == line


@pytest.mark.parametrize("lam", [(1,), (2,), (1, 1)])
def test_perp_properties_exhaustive(lam):
    pm = PairedModule("alternating", lam, 2)
    subs = enumerate_submodules(pm.module)
    perps = {s.key: perp(pm, s) for s in subs}
    for h in subs:
        hp = perps[h.key]
        assert h.size * hp.size == pm.module.size
        assert perp(pm, hp) == h
    for a, b in itertools.product(subs, subs):
        inside = bool(np.all(np.isin(a.elems, b.elems)))
        rev = bool(np.all(np.isin(perps[b.key].elems, perps[a.key].elems)))
        assert inside == rev


@pytest.mark.parametrize("lam,p", [((1,), 3), ((1, 1), 3), ((2,), 3)])
def test_hermitian_pairing_is_hermitian_and_regular(lam, p):
    pm = PairedModule("hermitian", lam, p)
    m = pm.module
    rng = np.random.default_rng(0)
    for x, y in rng.integers(0, m.size, size=(40, 2)):
        assert pairing_eval(pm, int(x), int(y)) == pairing_eval(pm, int(y), int(x)).conjugate()
    assert perp(pm, m.whole()).size == 1


def test_classical_count_examples():
    for lam in [(1,), (2, 1), (1, 1)]:
        assert count_G_classical(lam, (), lam, 3) == 1
    assert count_G_classical((1, 1), (1,), (1,), 3) == 4
    assert count_G_classical((2,), (1,), (1,), 3) == 1
    assert count_G_classical((2,), (1,), (2,), 3) == 0


def test_classical_counts_symmetric():
    for p in (2, 3):
        for lam in pt.iterate(4):
            if FiniteModule(lam, p, size_bound=None).size > 4096:
                continue
            for mu in pt.iterate(pt.weight(lam)):
                for nu in pt.of_weight(pt.weight(lam) - pt.weight(mu)):
                    assert count_G_classical(lam, mu, nu, p) == count_G_classical(lam, nu, mu, p)


def test_paired_count_examples():
    for lam in [(1,), (2,), (1, 1)]:
        assert count_G_paired("alternating", lam, (), lam, 3) == 1
    assert count_G_paired("alternating", (1,), (1,), (), 3) == 4
    assert count_G_paired("hermitian", (1, 1), (1,), (), 3) == 4
    assert count_G_paired("alternating", (1,), (1,), (), 5) == 6
    assert count_G_paired("hermitian", (1, 1), (1,), (), 5) == 6


@pytest.mark.parametrize("kind,lam,p", [("alternating", (1,), 2), ("alternating", (2,), 2),
                                        ("alternating", (1, 1), 2), ("alternating", (2, 1), 2),
                                        ("hermitian", (1, 1), 3), ("hermitian", (2,), 3)])
def test_isotropic_route_matches_full_filter(kind, lam, p):
    assert modlat.paired_table(kind, lam, p) == modlat.paired_table(kind, lam, p, method="all")


def test_alternating_sections_are_doubled():
    pm = PairedModule("alternating", (2, 1), 2)
    for mp in enumerate_submodules(pm.module):
        mperp = perp(pm, mp)
        if np.all(np.isin(mperp.elems, mp.elems)):
            pt.halve_doubled(section_type(mp, mperp))


@pytest.mark.parametrize("kind,lam,mu1,mu2,nu,p", [
    ("alternating", (2,), (1,), (1,), (), 2),
    ("alternating", (1, 1), (1,), (), (1,), 2),
    ("hermitian", (2, 1), (1,), (), (1,), 3),
])
def test_two_step_chains(kind, lam, mu1, mu2, nu, p):
    pm = PairedModule(kind, lam, p, size_bound=None)
    m = pm.module
    whole = m.whole()
    subs = enumerate_submodules(m)
    direct = 0
    for m2 in subs:
        m2p = perp(pm, m2)
        if not np.all(np.isin(m2p.elems, m2.elems)):
            continue
        sec = section_type(m2, m2p)
        if (sec if kind == "hermitian" else pt.halve_doubled(sec)) != nu:
            continue
        for m1 in subs:
            if (np.all(np.isin(m2.elems, m1.elems)) and section_type(whole, m1) == mu1
                    and section_type(m1, m2) == mu2):
                direct += 1
    via_sum = sum(count_G_classical(mu, mu1, mu2, p) * count_G_paired(kind, lam, mu, nu, p, None)
                  for mu in pt.of_weight(pt.weight(mu1) + pt.weight(mu2)))
    assert direct == via_sum > 0


def test_two_step_chains_classical():
    p, lam, mu1, mu2, nu = 2, (2, 1, 1), (1,), (1,), (2,)
    m = FiniteModule(lam, p)
    whole = m.whole()
    subs = enumerate_submodules(m)
    direct = sum(1 for m2 in subs if module_type(m2) == nu for m1 in subs
                 if np.all(np.isin(m2.elems, m1.elems)) and section_type(whole, m1) == mu1
                 and section_type(m1, m2) == mu2)
    via_sum = sum(count_G_classical(mu, mu1, mu2, p) * count_G_classical(lam, mu, nu, p)
                  for mu in pt.of_weight(2))
    assert direct == via_sum > 0


@pytest.mark.parametrize("lam,expected", [((1,), 4), ((1, 1), 24), ((2,), 12)])
def test_norm_sphere_examples(lam, expected):
    assert count_norm_sphere(lam, 3) == expected


def test_automorphism_examples():
    assert count_paired_automorphisms("hermitian", (1,), 3) == 4
    assert count_paired_automorphisms("alternating", (1,), 2) == 6
    assert count_paired_automorphisms("classical", (1,), 3) == 2
    assert count_paired_automorphisms("alternating", (1, 1), 3) == 51840
