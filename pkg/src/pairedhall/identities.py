"""Finite-instance checks of the Hall-Littlewood identities behind the moment formulas."""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache

import numpy as np

from . import partitions as pt
from .exactalg import LaurentRational, QPochInf, pochhammer, qbinomial
from .measures import hom_moment_closed
from .modlat import FiniteModule, classical_table
from .symfunc import cauchy_kernel, hl_eval, principal_skew, skew_single


class DivergentMeasure(ValueError):
    """The normalizing product of a Hall-Littlewood measure diverges."""


@dataclass
class IdentityCheck:
    id: str
    params: dict
    lhs: object
    rhs: object
    bound: float | None = None
    extra: dict = field(default_factory=dict)

    @property
    def status(self) -> str:
        if self.bound is None:
            return "pass" if self.lhs == self.rhs else "fail"
        return "pass" if abs(float(self.lhs) - float(self.rhs)) <= self.bound else "fail"

    def to_json(self) -> dict:
        def enc(v):
            return str(v) if isinstance(v, Fraction) else v
        out = {"id": self.id, "params": self.params, "lhs": enc(self.lhs), "rhs": enc(self.rhs),
               "status": self.status}
        if self.bound is not None:
            out["bound"] = self.bound
            out["diff"] = abs(float(self.lhs) - float(self.rhs))
        out.update(self.extra)
        return out


def _tj(x):
    return str(x) if isinstance(x, Fraction) else x


def check_sum_of_skew(lam, nu, t) -> IdentityCheck:
    lam, nu, t = pt.make(lam), pt.make(nu), Fraction(t)
    one = Fraction(1)
    num = Fraction(0)
    for mu in pt.subpartitions(lam):
        if pt.contains(nu, mu):
            num += principal_skew("Q", lam, mu, one, t) * principal_skew("P", nu, mu, t, t)
    lhs = num / (principal_skew("Q", lam, (), one, t) * principal_skew("P", nu, (), t, t))
    rhs = t ** (-pt.conj_dot(lam, nu))
    return IdentityCheck("sum-of-skew", {"lambda": list(lam), "nu": list(nu), "t": _tj(t)}, lhs, rhs)


def binomial_tail_sum(n: int, l1: int, n1: int, t):
    """Works for a rational t and for the formal parameter alike."""
    if not isinstance(t, LaurentRational):
        t = Fraction(t)
    total = 0 * t
    for m1 in range(min(l1, n1) + 1):
        total += (t ** (-(m1 + n) * (l1 + n1 - m1 + n)) * pochhammer(t ** (1 + l1 - m1), t, m1)
                  * qbinomial(n1, m1, t))
    return total


def check_binomial_tail_sum(n: int, l1: int, n1: int, t) -> IdentityCheck:
    t = Fraction(t)
    lhs = binomial_tail_sum(n, l1, n1, t)
    rhs = t ** (-(l1 + n) * (n1 + n))
    return IdentityCheck("binomial-tail-sum", {"n": n, "lambda1": l1, "nu1": n1, "t": _tj(t)}, lhs, rhs)


def check_pascal_step(n: int, m: int, t) -> IdentityCheck:
    """[n+1, m] = t^m [n, m] + [n, m-1], the step of the induction on nu_1."""
    t = Fraction(t)
    lhs = qbinomial(n + 1, m, t)
    rhs = t ** m * qbinomial(n, m, t) + (qbinomial(n, m - 1, t) if m >= 1 else 0)
    return IdentityCheck("pascal", {"n": n, "m": m, "t": _tj(t)}, lhs, rhs)


def _conjugate_sum_range(lam, nu):
    cap = min(lam[0] if lam else 0, nu[0] if nu else 0)
    length = max(len(lam), len(nu))
    return pt.iterate(cap * length, cap, length) if cap else iter([()])


def check_conjugate_identity(lam, nu, t) -> IdentityCheck:
    lam, nu, t = pt.make(lam), pt.make(nu), Fraction(t)
    length = max(len(lam), len(nu))
    lp = lam + (0,) * length
    np_ = nu + (0,) * length
    total = Fraction(0)
    for mu in _conjugate_sum_range(lam, nu):
        mp = mu + (0,) * (length + 1 - len(mu))
        term = t ** (-sum(mp[i] * (lp[i] + np_[i] - mp[i]) for i in range(length)))
        for i in range(length):
            d = mp[i] - mp[i + 1]
            term *= (pochhammer(t ** (1 + lp[i] - mp[i]), t, d) * pochhammer(t ** (1 + np_[i] - mp[i]), t, d)
                     / pochhammer(t, t, d))
        total += term
    rhs = t ** (-sum(a * b for a, b in zip(lam, nu)))
    return IdentityCheck("conjugate-sum", {"lambda": list(lam), "nu": list(nu), "t": _tj(t)}, total, rhs)


def check_hl_moment(a, t, nu, L: int, tol: float = 1e-5) -> IdentityCheck:
    """E[t^{-<lam', nu'>}] under the Hall-Littlewood measure with rho1 = a, rho2 = (1, t, ...),
    truncated at lam_1 <= L, against P_nu(a + (t, t^2, ...)) / P_nu(t, t^2, ...)."""
    a = [Fraction(x) for x in a]
    t, nu = Fraction(t), pt.make(nu)
    if any(abs(x) >= 1 for x in a) or not 0 < abs(t) < 1:
        raise DivergentMeasure("need |a_i| < 1 and 0 < |t| < 1")
    # kernel Pi_t(a; 1, t, ...) = prod_i 1 / (1 - a_i), since each row telescopes
    kernel = math.prod((1 / (1 - x) for x in a), start=Fraction(1))
    lhs = Fraction(0)
    mass = Fraction(0)
    k = len(a)
    for lam in pt.iterate(L * k, L, k):
        w = hl_eval(lam, a, t) * principal_skew("Q", lam, (), Fraction(1), t) / kernel
        mass += w
        lhs += w * t ** (-pt.conj_dot(lam, nu))
    rhs = Fraction(0)
    for mu in pt.subpartitions(nu):
        rhs += principal_skew("P", nu, mu, t, t) * hl_eval(mu, a, t)
    rhs /= principal_skew("P", nu, (), t, t)
    return IdentityCheck("hl-moment", {"a": [_tj(x) for x in a], "t": _tj(t), "nu": list(nu), "L": L},
                         lhs, rhs, bound=tol, extra={"unassigned_mass": float(1 - mass)})


# ----------------------------------------------------------- skew Cauchy

def check_skew_cauchy(mu, nu, x, y, t, max_weight: int = 12, tol: float = 1e-9) -> IdentityCheck:
    """sum_k Q_{k/mu}(y) P_{k/nu}(x) = Pi_t(x; y) sum_l Q_{nu/l}(y) P_{mu/l}(x) in one variable each."""
    mu, nu = pt.make(mu), pt.make(nu)
    x, y, t = Fraction(x), Fraction(y), Fraction(t)
    lhs = Fraction(0)
    for kappa in pt.iterate(max_weight):
        if pt.contains(kappa, mu) and pt.contains(kappa, nu):
            lhs += skew_single("Q", kappa, mu, y, t) * skew_single("P", kappa, nu, x, t)
    inner = Fraction(0)
    for lam in pt.subpartitions(mu):
        if pt.contains(nu, lam):
            inner += skew_single("Q", nu, lam, y, t) * skew_single("P", mu, lam, x, t)
    rhs = cauchy_kernel([x], [y], t) * inner
    return IdentityCheck("skew-cauchy", {"mu": list(mu), "nu": list(nu), "x": _tj(x), "y": _tj(y),
                                         "t": _tj(t), "max_weight": max_weight}, lhs, rhs, bound=tol)


# ------------------------------------------------------ subgroup series

def subgroup_series_coefficient(nu, mu, p: int) -> Fraction:
    """C_{nu/mu}(p) = P_mu(1,t,...) P_{nu/mu}(1,t,...) / P_nu(1,t,...) at t = 1/p."""
    t, one = Fraction(1, p), Fraction(1)
    return (principal_skew("P", mu, (), one, t) * principal_skew("P", nu, mu, one, t)
            / principal_skew("P", nu, (), one, t))


def count_subgroups_of_type(nu, mu, p: int) -> int:
    return sum(c for (_, sub), c in classical_table(pt.make(nu), p).items() if sub == pt.make(mu))


def check_subgroup_series(nu, u: int, p: int) -> IdentityCheck:
    nu = pt.make(nu)
    series = Fraction(0)
    mismatches = []
    for mu in pt.subpartitions(nu):
        c = subgroup_series_coefficient(nu, mu, p)
        if pt.weight(nu) <= 3:
            brute = count_subgroups_of_type(nu, mu, p)
            if brute != c:
                mismatches.append({"mu": list(mu), "series": str(c), "brute": brute})
        series += c * Fraction(p) ** (-pt.weight(mu) * u)
    closed = hom_moment_closed("nopairing", u, nu, p)
    chk = IdentityCheck("subgroup-series", {"nu": list(nu), "u": u, "p": p}, series,
                        closed if not mismatches else None, extra={"coefficient_mismatches": mismatches})
    return chk


# ------------------------------------------- homomorphism counting by brute force

@lru_cache(maxsize=None)
def _hom_images(src, dst, p: int):
    """All tuples of images of the generators of G_src in G_dst, with image sizes."""
    if not dst:
        return (1,), 1
    m = FiniteModule(dst, p, 1, None)
    cands = [np.flatnonzero(np.all((m.coords * p ** e) % m.moduli == 0, axis=1)) for e in src]
    out = []

    def rec(i, h):
        if i == len(src):
            out.append(len(h))
            return
        for y in cands[i]:
            rec(i + 1, m.extend(h, int(y)))

    rec(0, np.zeros(1, dtype=np.int64))
    return tuple(out), m.size


def count_surjections(src, dst, p: int) -> int:
    sizes, total = _hom_images(pt.make(src), pt.make(dst), p)
    return sum(1 for s in sizes if s == total)


def count_injections(src, dst, p: int) -> int:
    """Injective maps have image of size |G_src|."""
    src = pt.make(src)
    sizes, _ = _hom_images(src, pt.make(dst), p)
    return sum(1 for s in sizes if s == p ** pt.weight(src))


def count_automorphisms(lam, p: int) -> int:
    return count_surjections(lam, lam, p)


def check_hom_decomposition(lam, nu, p: int) -> IdentityCheck:
    """sum_mu #Sur(G_lam, G_mu) #Inj(G_mu, G_nu) / #Aut(G_mu) = p^{<lam', nu'>}."""
    lam, nu = pt.make(lam), pt.make(nu)
    total = Fraction(0)
    for mu in pt.iterate(min(pt.weight(lam), pt.weight(nu))):
        sur = count_surjections(lam, mu, p)
        if not sur:
            continue
        inj = count_injections(mu, nu, p)
        if inj:
            total += Fraction(sur * inj, count_automorphisms(mu, p))
    return IdentityCheck("hom-decomposition", {"lambda": list(lam), "nu": list(nu), "p": p},
                         total, Fraction(p) ** pt.conj_dot(lam, nu))


def product_value(z, q, tol: float = 1e-15):
    return QPochInf(z, q).value(tol)
