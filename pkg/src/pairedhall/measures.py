"""Cohen-Lenstra type u-probabilities with and without pairings, their Hall-Littlewood
measure forms, Hom moments and sampling."""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from . import partitions as pt
from .exactalg import LaurentRational, QPochInf, pochhammer
from .symfunc import cauchy_kernel_closed, principal_skew, two_tail_spec

MEASURE_KINDS = ("nopairing", "alternating", "hermitian")


class FormMismatch(AssertionError):
    """The automorphism form and the Hall-Littlewood form of a u-probability differ."""


class InsufficientMass(ValueError):
    """The truncated table leaves more unassigned mass than the tolerance."""


def _kind(kind: str) -> str:
    if kind == "classical":
        return "nopairing"
    if kind not in MEASURE_KINDS:
        raise ValueError(f"unknown measure kind {kind!r}")
    return kind


@dataclass(frozen=True)
class UMeasureSpec:
    kind: str
    u: int
    q: Fraction
    L: int
    tol: float = 1e-6

    def __post_init__(self):
        object.__setattr__(self, "kind", _kind(self.kind))
        object.__setattr__(self, "q", Fraction(self.q))
        if self.u < 0 or int(self.u) != self.u:
            raise ValueError("u must be a nonnegative integer")
        if self.q <= 1:
            raise ValueError("q must exceed 1")


def aut_formula(kind: str, lam, q=None):
    """Automorphism counts: plain, pairing-preserving alternating, pairing-preserving Hermitian.

    With q=None the result is a rational function of a formal q.
    """
    kind = _kind(kind)
    lam = pt.make(lam)
    Q = LaurentRational.t() if q is None else Fraction(q)
    n, w = pt.n_of(lam), pt.weight(lam)
    if kind == "nopairing":
        out, base = Q ** (2 * n + w), 1 / Q
    elif kind == "alternating":
        out, base = Q ** (4 * n + 3 * w), 1 / Q ** 2
    else:
        out, base = Q ** (w + 2 * n), -1 / Q
    for m in pt.multiplicities(lam).values():
        out = out * pochhammer(base, base, m)
    return out


def _tail_data(kind: str, u: int, q: Fraction):
    """(z, T) with the normalizing product equal to (z; T)_inf."""
    if kind == "nopairing":
        return q ** (-u - 1), 1 / q
    if kind == "alternating":
        return q ** (-1 - 2 * u), q ** -2
    return q ** (-1 - u), -1 / q


@dataclass(frozen=True)
class UProb:
    lam: tuple
    aut_prefactor: Fraction
    hl_prefactor: Fraction
    aut_product: QPochInf
    hl_product: QPochInf
    agree: bool

    def value(self, tol: float = 1e-15):
        v, err = self.aut_product.value(tol)
        return float(self.aut_prefactor) * v, abs(float(self.aut_prefactor)) * err


def u_prob_forms(spec: UMeasureSpec, lam) -> UProb:
    """Both closed forms of P(lam); ``agree`` compares them after peeling off the
    first J = lam_1 + u + 1 factors of each infinite product."""
    lam = pt.make(lam)
    q, u, kind = spec.q, spec.u, spec.kind
    z, T = _tail_data(kind, u, q)
    w = pt.weight(lam)
    aut = aut_formula(kind, lam, q)
    if kind == "nopairing":
        aut_pre = q ** (-u * w) / aut
    elif kind == "alternating":
        aut_pre = q ** (-2 * u * w) * q ** (2 * w) / aut
    else:
        aut_pre = q ** (-u * w) / aut
    aut_prod = QPochInf(z, T)
    # Hall-Littlewood side, built from t = 1/q alone: rho1 = u1 (1, T, T^2, ...), rho2 = (1, T, ...)
    t = 1 / q
    if kind == "nopairing":
        u1, T_hl = t ** (1 + u), t
    elif kind == "alternating":
        u1, T_hl = t ** (1 + 2 * u), t * t
    else:
        u1, T_hl = t ** (1 + u), -t
    hl_pre = principal_skew("P", lam, (), u1, T_hl) * principal_skew("Q", lam, (), Fraction(1), T_hl)
    # the kernel is 1 / (u1; T)_inf, so dividing by it multiplies by the product
    hl_prod = cauchy_kernel_closed(u1, Fraction(1), T_hl)
    J = (lam[0] if lam else 0) + u + 1
    agree = (aut_pre * aut_prod.head(J) == hl_pre * hl_prod.head(J)
             and aut_prod.shifted(J) == hl_prod.shifted(J))
    return UProb(lam, aut_pre, hl_pre, aut_prod, hl_prod, agree)


def u_prob(spec: UMeasureSpec, lam) -> UProb:
    r = u_prob_forms(spec, lam)
    if not r.agree:
        raise FormMismatch(f"u-probability forms differ at {r.lam} for {spec}")
    return r


# ------------------------------------------------------------ float tables

def _log_pochhammer(base: float, m: int) -> float:
    return sum(math.log1p(-base ** j) for j in range(1, m + 1))


def _log_product(z: float, T: float) -> float:
    out, term = 0.0, z
    while abs(term) > 1e-18:
        out += math.log1p(-term)
        term *= T
    return out


class _FloatMeasure:
    def __init__(self, spec: UMeasureSpec):
        self.spec = spec
        q = float(spec.q)
        self.lq = math.log(q)
        z, T = _tail_data(spec.kind, spec.u, spec.q)
        self.log_prod = _log_product(float(z), float(T))
        self.base = {"nopairing": 1 / q, "alternating": q ** -2, "hermitian": -1 / q}[spec.kind]

    def log_prob(self, lam) -> float:
        s, lq = self.spec, self.lq
        n, w = pt.n_of(lam), pt.weight(lam)
        logm = sum(_log_pochhammer(self.base, m) for m in pt.multiplicities(lam).values())
        if s.kind == "nopairing":
            log_aut = (2 * n + w) * lq + logm
            return -s.u * w * lq - log_aut + self.log_prod
        if s.kind == "alternating":
            log_aut = (4 * n + 3 * w) * lq + logm
            return (2 - 2 * s.u) * w * lq - log_aut + self.log_prod
        log_aut = (w + 2 * n) * lq + logm
        return -s.u * w * lq - log_aut + self.log_prod


def _box_levels(L: int):
    for w in range(L * L + 1):
        yield w, list(pt.of_weight(w, L, L))


def truncated_table(spec: UMeasureSpec, weight_fn=None):
    """Partitions in the L-box in graded lexicographic order with float probabilities.

    Weight levels are added until two consecutive levels carry less than tol * 1e-3
    (of mass, or of mass times weight_fn when given); the rest of the box counts as
    unassigned. Returns (rows, unassigned mass) with rows = [(lam, prob)].
    """
    fm = _FloatMeasure(spec)
    rows = []
    quiet = 0
    for w, level in _box_levels(spec.L):
        level_mass = 0.0
        for lam in level:
            pr = math.exp(fm.log_prob(lam))
            rows.append((lam, pr))
            level_mass += pr * (weight_fn(lam) if weight_fn else 1.0)
        quiet = quiet + 1 if level_mass < spec.tol * 1e-3 else 0
        if quiet >= 2:
            break
    total = math.fsum(pr for _, pr in rows)
    return rows, 1.0 - total


def measure_rows(spec: UMeasureSpec) -> list[dict]:
    rows, _ = truncated_table(spec)
    cum = 0.0
    out = []
    for lam, pr in rows:
        cum += pr
        out.append({"lambda": list(lam), "prob": pr, "cumprob": cum})
    return out


def sample(spec: UMeasureSpec, seed: int, count: int) -> list[tuple]:
    """Inverse-CDF draws over the truncated table (renormalized), reproducible per seed."""
    rows, unassigned = truncated_table(spec)
    if unassigned > spec.tol:
        raise InsufficientMass(f"truncation leaves {unassigned:.3g} unassigned (tolerance {spec.tol})")
    cum = np.cumsum([pr for _, pr in rows])
    rng = np.random.default_rng(seed)
    draws = rng.random(count) * cum[-1]
    idx = np.searchsorted(cum, draws, side="right")
    idx = np.minimum(idx, len(rows) - 1)
    return [rows[i][0] for i in idx]


# ------------------------------------------------------------- Hom moments

def hom_count(kind: str, lam, nu, q):
    kind = _kind(kind)
    e = pt.conj_dot(lam, nu)
    q = Fraction(q)
    return q ** e if kind == "nopairing" else q ** (2 * e)


def _moment_tails(kind: str, u: int, q):
    """(T, second tail start u2) for the Hom-moment ratio; the first tail starts at 1."""
    one = q / q
    if kind == "nopairing":
        T = one / q
        return T, T ** u
    if kind == "alternating":
        T = one / q ** 2
        return T, q ** (1 - 2 * u)
    T = -one / q
    return T, -(one / q ** u)


def hom_moment_closed(kind: str, u: int, nu, q):
    """E[#Hom(M, M_nu)] as the ratio P_nu(tail1 + tail2) / P_nu(tail1), exactly."""
    kind = _kind(kind)
    nu = pt.make(nu)
    if not isinstance(q, LaurentRational):
        q = Fraction(q)
    T, u2 = _moment_tails(kind, u, q)
    target = pt.double_interleave(nu) if kind == "hermitian" else nu
    one = q / q
    return two_tail_spec(target, one, u2, T) / principal_skew("P", target, (), one, T)


def hom_moment_empirical(kind: str, u: int, nu, q, L: int, tol: float = 1e-9):
    """Truncated sum of P(lam) #Hom(M_lam, M_nu) over the L-box.

    Returns (value, unassigned mass). Float arithmetic: the measure involves an infinite product.
    """
    spec = UMeasureSpec(kind, u, q, L, tol)
    qf = float(spec.q)
    nu = pt.make(nu)
    factor = 1 if spec.kind == "nopairing" else 2

    def hom(lam):
        return qf ** (factor * pt.conj_dot(lam, nu))

    rows, unassigned = truncated_table(spec, hom)
    return math.fsum(pr * hom(lam) for lam, pr in rows), unassigned
