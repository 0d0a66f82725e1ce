"""Finite modules of type lambda, their submodule lattices, pairings, and the counting predicates.

A module of type lambda over o (o = Z_p, or its unramified quadratic extension) is
stored as the abelian group prod_i (Z/p^{lambda_i})^d with d = 1 or 2. Elements are
integer indices in mixed radix; a numpy array holds all coordinate vectors, so sums
of subgroups, p-multiples and pairing masks are vectorized.
"""
from __future__ import annotations

from collections import Counter
from functools import lru_cache

import numpy as np

from . import partitions as pt
from .basering import CyclicElem, CyclicRing, GaloisElem, GaloisRing, smallest_nonresidue

DEFAULT_SIZE_BOUND = 4096


class SizeBound(ValueError):
    """The module has more elements than the configured bound."""


class NotASubmodule(ValueError):
    """A submodule of a different parent was supplied."""


class InternalInconsistency(ArithmeticError):
    """A count or type computation contradicted the structure theory; indicates a bug."""


class FiniteModule:
    """prod_i o/p^{lambda_i} with o of degree d over Z_p (d = 2 uses xi^2 = c)."""

    def __init__(self, lam, p: int, degree: int = 1, size_bound: int | None = DEFAULT_SIZE_BOUND):
        self.lam = pt.make(lam)
        self.p = p
        self.degree = degree
        self.c = smallest_nonresidue(p) if degree == 2 else None
        self.k = self.lam[0] if self.lam else 0
        self.residue_size = p ** degree
        self.moduli = np.array([p ** part for part in self.lam for _ in range(degree)], dtype=np.int64)
        self.size = int(np.prod(self.moduli)) if len(self.moduli) else 1
        if size_bound is not None and self.size > size_bound:
            raise SizeBound(f"module of type {self.lam} over p={p} has {self.size} elements "
                            f"(bound {size_bound})")
        dim = len(self.moduli)
        self.dim = dim
        strides = np.ones(dim, dtype=np.int64)
        for i in range(dim - 2, -1, -1):
            strides[i] = strides[i + 1] * self.moduli[i + 1]
        self.strides = strides
        idx = np.arange(self.size, dtype=np.int64)
        self.coords = (idx[:, None] // strides[None, :]) % self.moduli[None, :] if dim else \
            np.zeros((1, 0), dtype=np.int64)

    @property
    def ring(self):
        if self.degree == 2:
            return GaloisRing(self.p, max(self.k, 1), self.c)
        return CyclicRing(self.p, max(self.k, 1))

    def encode(self, vecs: np.ndarray) -> np.ndarray:
        vecs = np.asarray(vecs, dtype=np.int64) % self.moduli
        return vecs @ self.strides if self.dim else np.zeros(len(vecs), dtype=np.int64)

    def basis(self) -> list[int]:
        """Indices of the standard o-module generators e_1, ..., e_l."""
        out = []
        for i in range(len(self.lam)):
            v = np.zeros(self.dim, dtype=np.int64)
            v[i * self.degree] = 1
            out.append(int(self.encode(v[None, :])[0]))
        return out

    def xi(self, vecs: np.ndarray) -> np.ndarray:
        """Multiplication by xi on coordinate vectors: (a, b) -> (c b, a)."""
        out = np.empty_like(vecs)
        out[:, 0::2] = self.c * vecs[:, 1::2]
        out[:, 1::2] = vecs[:, 0::2]
        return out % self.moduli

    # subgroup arithmetic on sorted index arrays

    def add_sets(self, a: np.ndarray, b: np.ndarray) -> np.ndarray:
        s = self.coords[a][:, None, :] + self.coords[b][None, :, :]
        return np.unique(self.encode(s.reshape(-1, self.dim)))

    def cyclic(self, x: int) -> np.ndarray:
        """The subgroup Z x (all multiples of x)."""
        order = self.p ** self.k if self.k else 1
        mult = np.arange(order, dtype=np.int64)[:, None] * self.coords[x][None, :]
        return np.unique(self.encode(mult))

    def extend(self, h: np.ndarray, x: int) -> np.ndarray:
        """The o-submodule generated by the subgroup h and the element x."""
        out = self.add_sets(h, self.cyclic(x))
        if self.degree == 2:
            y = int(self.encode(self.xi(self.coords[[x]]))[0])
            out = self.add_sets(out, self.cyclic(y))
        return out

    def span(self, gens) -> np.ndarray:
        h = np.zeros(1, dtype=np.int64)
        for g in gens:
            if not np.isin(g, h)[()]:
                h = self.extend(h, int(g))
        return h

    def scale(self, h: np.ndarray, m: int) -> np.ndarray:
        return np.unique(self.encode(self.coords[h] * m))

    def p_power_multiples(self, j: int) -> np.ndarray:
        """p^j M: coordinates divisible by p^{min(j, lambda_i)}."""
        div = np.minimum(self.p ** j, self.moduli)
        return np.flatnonzero(np.all(self.coords % div == 0, axis=1))

    def whole(self) -> "Submodule":
        return Submodule(self, np.arange(self.size, dtype=np.int64), tuple(self.basis()))

    def zero(self) -> "Submodule":
        return Submodule(self, np.zeros(1, dtype=np.int64), ())

    def submodule(self, gens) -> "Submodule":
        return Submodule(self, self.span(gens), tuple(int(g) for g in gens))

    def describe(self) -> dict:
        d = {"p": self.p, "k": self.k}
        if self.degree == 2:
            d["c"] = self.c
        return d


class Submodule:
    """A submodule given by its sorted element indices (canonical) and generators."""

    __slots__ = ("parent", "elems", "gens", "_key")

    def __init__(self, parent: FiniteModule, elems: np.ndarray, gens=()):
        self.parent = parent
        self.elems = np.asarray(elems, dtype=np.int64)
        self.gens = tuple(gens)
        self._key = None

    @property
    def key(self) -> bytes:
        if self._key is None:
            self._key = self.elems.tobytes()
        return self._key

    @property
    def size(self) -> int:
        return len(self.elems)

    def elements(self) -> list[tuple]:
        return [tuple(int(v) for v in self.parent.coords[i]) for i in self.elems]

    def generators(self) -> tuple:
        """A generating set; computed greedily when none was recorded."""
        if self.gens or self.size == 1:
            return self.gens
        m = self.parent
        cur = np.zeros(1, dtype=np.int64)
        gens = []
        for x in self.elems:
            if len(cur) == self.size:
                break
            if not np.isin(x, cur)[()]:
                gens.append(int(x))
                cur = m.extend(cur, int(x))
        self.gens = tuple(gens)
        return self.gens

    def __eq__(self, other):
        return isinstance(other, Submodule) and self.parent is other.parent and self.key == other.key

    def __hash__(self):
        return hash(self.key)


def _exact_log(n: int, r: int) -> int:
    e = 0
    while n > 1:
        if n % r:
            raise InternalInconsistency(f"{n} is not a power of {r}")
        n //= r
        e += 1
    return e


def _intersect_size(a: np.ndarray, b: np.ndarray) -> int:
    return len(np.intersect1d(a, b, assume_unique=True))


def _sum_size(a: np.ndarray, b: np.ndarray) -> int:
    return len(a) * len(b) // _intersect_size(a, b)


def section_type(outer: Submodule, inner: Submodule) -> tuple:
    """Type of outer/inner via mu'_j = log_r(|p^{j-1}A + B| / |p^j A + B|)."""
    m = outer.parent
    if inner.parent is not m:
        raise NotASubmodule("submodules of different modules")
    if not np.all(np.isin(inner.elems, outer.elems)):
        raise NotASubmodule("inner is not contained in outer")
    r = m.residue_size
    col = []
    prev = outer.elems
    prev_size = _sum_size(prev, inner.elems)
    j = 1
    while prev_size > len(inner.elems):
        cur = m.scale(outer.elems, m.p ** j)
        cur_size = _sum_size(cur, inner.elems)
        if prev_size % cur_size:
            raise InternalInconsistency("non-integral layer in the size ladder")
        col.append(_exact_log(prev_size // cur_size, r))
        prev_size = cur_size
        j += 1
    return pt.conjugate(pt.make(col)) if col else ()


def module_type(h) -> tuple:
    """Type of a submodule (or of the whole module) from the sizes of p^j H."""
    if isinstance(h, FiniteModule):
        h = h.whole()
    return section_type(h, h.parent.zero())


def quotient_type(m: FiniteModule, h: Submodule) -> tuple:
    if h.parent is not m:
        raise NotASubmodule("submodule belongs to a different module")
    return section_type(m.whole(), h)


def _cover_generators(m: FiniteModule, h: np.ndarray, hp: np.ndarray) -> np.ndarray:
    """Elements of hp that together with h generate hp (hp/h is cyclic): hp minus (h + p hp)."""
    base = m.add_sets(h, m.scale(hp, m.p))
    return np.setdiff1d(hp, base, assume_unique=True)


def enumerate_submodules(m: FiniteModule) -> list[Submodule]:
    """Every submodule exactly once, by closure from 0 adjoining one element at a time."""
    zero = m.zero()
    found = {zero.key: zero}
    queue = [zero]
    while queue:
        h = queue.pop()
        covered = np.zeros(m.size, dtype=bool)
        covered[h.elems] = True
        for x in range(m.size):
            if covered[x]:
                continue
            elems = m.extend(h.elems, x)
            covered[_cover_generators(m, h.elems, elems)] = True
            key = elems.tobytes()
            if key not in found:
                sub = Submodule(m, elems, h.gens + (x,))
                found[key] = sub
                queue.append(sub)
    return sorted(found.values(), key=lambda s: (s.size, s.key))


# ----------------------------------------------------------------- pairings

class PairedModule:
    """Alternating (type double(lam) over Z_p, symplectic blocks) or Hermitian
    (type lam over the quadratic Galois ring) module with the scaled Gram pairing."""

    def __init__(self, kind: str, lam, p: int, size_bound: int | None = DEFAULT_SIZE_BOUND):
        if kind not in ("alternating", "hermitian"):
            raise ValueError(f"unknown pairing kind {kind!r}")
        if kind == "hermitian" and p == 2:
            from .basering import EvenPrimeUnsupported
            raise EvenPrimeUnsupported("Hermitian modules need odd p")
        self.kind = kind
        self.lam = pt.make(lam)
        self.p = p
        if kind == "alternating":
            self.module = FiniteModule(pt.double_interleave(self.lam), p, 1, size_bound)
        else:
            self.module = FiniteModule(self.lam, p, 2, size_bound)
        self.k = self.lam[0] if self.lam else 0
        self.mod = p ** self.k
        scales = [p ** (self.k - part) for part in self.lam]
        self.scales = np.array([s for s in scales for _ in range(2)], dtype=np.int64)

    def _forms(self, y: np.ndarray):
        """Linear forms in x giving the scaled pairing <x, y> (one form, or re/im for Hermitian)."""
        s = self.scales
        if self.kind == "alternating":
            w = np.empty_like(y)
            w[0::2] = y[1::2]
            w[1::2] = -y[0::2]
            return (w * s,)
        c = self.module.c
        re = np.empty_like(y)
        im = np.empty_like(y)
        # conj(a + b xi) (c0 + d xi) = (a c0 - c b d) + (a d - b c0) xi
        re[0::2] = y[0::2]
        re[1::2] = -c * y[1::2]
        im[0::2] = y[1::2]
        im[1::2] = -y[0::2]
        return (re * s, im * s)

    def pair_all(self, y: int):
        """Scaled <x, y> for every element x, as one int array (or re/im pair), reduced mod p^k."""
        coords = self.module.coords
        return tuple((coords @ w) % self.mod for w in self._forms(coords[y]))

    def pairing_eval(self, x: int, y: int):
        vals = [int(v[x]) for v in self.pair_all(y)]
        if self.kind == "alternating":
            return CyclicElem(CyclicRing(self.p, max(self.k, 1)), vals[0])
        return GaloisElem(GaloisRing(self.p, max(self.k, 1), self.module.c), vals[0], vals[1])

    def self_pairing_all(self):
        """Scaled <x, x> for every x (Hermitian: real; alternating: zero)."""
        coords = self.module.coords
        if self.kind == "alternating":
            return np.zeros(len(coords), dtype=np.int64)
        a, b = coords[:, 0::2], coords[:, 1::2]
        nm = a * a - self.module.c * b * b
        return (nm @ self.scales[0::2]) % self.mod

    def orthogonal_mask(self, gens) -> np.ndarray:
        mask = np.ones(self.module.size, dtype=bool)
        for g in gens:
            for v in self.pair_all(int(g)):
                mask &= v == 0
        return mask

    def perp(self, h: Submodule) -> Submodule:
        if h.parent is not self.module:
            raise NotASubmodule("submodule belongs to a different module")
        elems = np.flatnonzero(self.orthogonal_mask(h.generators()))
        return Submodule(self.module, elems)


def pairing_eval(pm: PairedModule, x: int, y: int):
    return pm.pairing_eval(x, y)


def perp(pm: PairedModule, h: Submodule) -> Submodule:
    return pm.perp(h)


def isotropic_submodules(pm: PairedModule) -> list[Submodule]:
    """All N with N inside N^perp, grown from 0 by adjoining isotropic vectors of N^perp."""
    m = pm.module
    selfpair = pm.self_pairing_all() == 0
    zero = m.zero()
    found = {zero.key: zero}
    queue = [zero]
    while queue:
        n = queue.pop()
        cand = pm.orthogonal_mask(n.gens) & selfpair
        cand[n.elems] = False
        for x in np.flatnonzero(cand):
            if not cand[x]:
                continue
            elems = m.extend(n.elems, int(x))
            cand[_cover_generators(m, n.elems, elems)] = False
            key = elems.tobytes()
            if key not in found:
                sub = Submodule(m, elems, n.gens + (int(x),))
                found[key] = sub
                queue.append(sub)
    return sorted(found.values(), key=lambda s: (s.size, s.key))


# ------------------------------------------------------------------ counts

def _module_for(lam, p: int, degree: int, size_bound):
    return FiniteModule(lam, p, degree, size_bound)


@lru_cache(maxsize=None)
def classical_table(lam, p: int, degree: int = 1, size_bound=DEFAULT_SIZE_BOUND) -> dict:
    """{(quotient type, submodule type): count} over all submodules of M_lam."""
    m = _module_for(lam, p, degree, size_bound)
    whole = m.whole()
    table: Counter = Counter()
    for h in enumerate_submodules(m):
        table[(section_type(whole, h), module_type(h))] += 1
    return dict(table)


def count_G_classical(lam, mu, nu, p: int, degree: int = 1, size_bound=DEFAULT_SIZE_BOUND) -> int:
    lam, mu, nu = pt.make(lam), pt.make(mu), pt.make(nu)
    if pt.weight(lam) != pt.weight(mu) + pt.weight(nu):
        return 0
    return classical_table(lam, p, degree, size_bound).get((mu, nu), 0)


def _paired_type(kind: str, sec: tuple) -> tuple:
    if kind == "hermitian":
        return sec
    try:
        return pt.halve_doubled(sec)
    except pt.NotDoubled as exc:
        raise InternalInconsistency(f"section of type {sec} under an isotropic perp is not doubled") from exc


@lru_cache(maxsize=None)
def paired_table(kind: str, lam, p: int, size_bound=DEFAULT_SIZE_BOUND, method: str = "isotropic") -> dict:
    """{(mu, nu): #M'} where M/M' has type mu, perp(M') lies in M', and M'/perp(M') has paired type nu.

    method="isotropic" reaches each candidate M' as the perp of an isotropic N;
    method="all" filters every submodule. Both re-check the defining conditions on M'.
    """
    pm = PairedModule(kind, lam, p, size_bound)
    m = pm.module
    whole = m.whole()
    if method == "isotropic":
        candidates = [pm.perp(n) for n in isotropic_submodules(pm)]
    elif method == "all":
        candidates = enumerate_submodules(m)
    else:
        raise ValueError(f"unknown method {method!r}")
    table: Counter = Counter()
    for mp in candidates:
        mperp = pm.perp(mp)
        if not np.all(np.isin(mperp.elems, mp.elems)):
            if method == "isotropic":
                raise InternalInconsistency("perp of an isotropic submodule is not coisotropic")
            continue
        mu = section_type(whole, mp)
        nu = _paired_type(kind, section_type(mp, mperp))
        table[(mu, nu)] += 1
    return dict(table)


def count_G_paired(kind: str, lam, mu, nu, p: int, size_bound=DEFAULT_SIZE_BOUND,
                   method: str = "isotropic") -> int:
    lam, mu, nu = pt.make(lam), pt.make(mu), pt.make(nu)
    w = pt.weight(mu) * (2 if kind == "hermitian" else 1) + pt.weight(nu)
    if pt.weight(lam) != w:
        return 0
    return paired_table(kind, lam, p, size_bound, method).get((mu, nu), 0)


def count_norm_sphere(lam, p: int, size_bound=DEFAULT_SIZE_BOUND) -> int:
    """#{x : <x, x> = pi^{-lambda_1}}, i.e. scaled self-pairing equal to 1."""
    pm = PairedModule("hermitian", lam, p, size_bound)
    return int(np.count_nonzero(pm.self_pairing_all() == 1 % pm.mod))


def _annihilated_mask(m: FiniteModule, e: int) -> np.ndarray:
    return np.all((m.coords * (m.p ** e)) % m.moduli == 0, axis=1)


def count_paired_automorphisms(kind: str, lam, p: int, size_bound=DEFAULT_SIZE_BOUND) -> int:
    """Automorphisms counted through the images of the standard generators.

    classical: images y_i with p^{lambda_i} y_i = 0 whose span is everything.
    alternating/hermitian: images satisfying the annihilator conditions and all Gram
    relations <y_a, y_b> = <e_a, e_b>; such a map is injective (a kernel vector would
    pair to zero with everything) and hence bijective.
    """
    lam = pt.make(lam)
    if kind == "classical":
        m = FiniteModule(lam, p, 1, size_bound)
        gens_order = list(lam)
        cands = [np.flatnonzero(_annihilated_mask(m, e)) for e in gens_order]

        def rec(i, h):
            if i == len(gens_order):
                return 1 if len(h) == m.size else 0
            target = p ** sum(gens_order[:i + 1])
            total = 0
            for y in cands[i]:
                h2 = m.extend(h, int(y))
                if len(h2) == target:
                    total += rec(i + 1, h2)
            return total

        return rec(0, np.zeros(1, dtype=np.int64))

    pm = PairedModule(kind, lam, p, size_bound)
    m = pm.module
    gens = m.basis() if kind == "hermitian" else [
        int(m.encode(np.eye(m.dim, dtype=np.int64)[[a]])[0]) for a in range(m.dim)]
    orders = list(m.lam)
    ann = [_annihilated_mask(m, e) for e in orders]
    # required scaled values <e_b, e_a> for b < a (and b = a for Hermitian)
    gram = [[pm.pair_all(gens[a]) for a in range(len(gens))]]
    selfpair = pm.self_pairing_all()

    def target(b, a):
        return tuple(int(v[gens[b]]) for v in gram[0][a])

    def rec(a, images):
        mask = ann[a].copy()
        if kind == "hermitian":
            mask &= selfpair == target(a, a)[0]
        for b, yb in enumerate(images):
            # <y_b, x> = conj <x, y_b> (Hermitian) or -<x, y_b> (alternating)
            vals = pm.pair_all(yb)
            want = target(b, a)
            if kind == "alternating":
                mask &= (-vals[0]) % pm.mod == want[0]
            else:
                mask &= (vals[0] == want[0]) & ((-vals[1]) % pm.mod == want[1])
        if a == len(gens) - 1:
            return int(np.count_nonzero(mask))
        return sum(rec(a + 1, images + [int(y)]) for y in np.flatnonzero(mask))

    if not gens:
        return 1
    return rec(0, [])
