"""Structure constants of the Hall algebra and of its alternating/Hermitian modules.

Symbolic constants come from products of Hall-Littlewood polynomials. All
polynomials are computed in one formal parameter s standing for 1/q, and the
inner basis parameter is s, s^2 or -s. Brute-force constants come from modlat.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache

from . import modlat
from . import partitions as pt
from .exactalg import LaurentRational, format_poly
from .symfunc import expand_in_hl, hl_p, substitute_monomials

KINDS = ("classical", "alternating", "hermitian")


class BoundExceeded(ValueError):
    """Requested weights exceed the configured bound."""


def weight_of(kind: str, mu, nu) -> int:
    return (2 if kind == "hermitian" else 1) * pt.weight(mu) + pt.weight(nu)


@dataclass
class StructureConstantTable:
    kind: str
    mu: tuple
    nu: tuple
    entries: dict = field(default_factory=dict)  # lam -> LaurentRational in q

    def value(self, lam, q) -> Fraction:
        e = self.entries.get(pt.make(lam))
        return Fraction(0) if e is None else e.eval(q)

    def is_integer_polynomial(self, lam) -> bool:
        e = self.entries[lam]
        if not e.is_poly():
            return False
        p = e.as_poly()
        return p.is_zero() or (p.min_exp() >= 0 and all(v.denominator == 1 for _, v in p.items()))

    def poly(self, lam) -> list[int]:
        """Ascending integer coefficient list of the entry at lam."""
        if not self.is_integer_polynomial(lam):
            raise ValueError(f"entry at {lam} is not an integer polynomial in q")
        p = self.entries[lam].as_poly()
        if p.is_zero():
            return [0]
        return [int(p.coeff(e)) for e in range(p.max_exp() + 1)]

    def to_json(self) -> dict:
        rows = []
        for lam in sorted(self.entries, key=lambda l: (pt.weight(l), tuple(-x for x in l))):
            row = {"lambda": list(lam), "text": format_poly(self.entries[lam].as_poly(), "q")
                   if self.entries[lam].is_poly() else str(self.entries[lam])}
            if self.is_integer_polynomial(lam):
                row["poly"] = self.poly(lam)
            rows.append(row)
        return {"kind": self.kind, "mu": list(self.mu), "nu": list(self.nu), "entries": rows}


def _s_power(e: int, sign: int = 1) -> LaurentRational:
    return LaurentRational.t(e, sign ** e if e >= 0 else sign ** (-e))


def _doubled_variables(f, n: int):
    """f(x_1, s x_1, x_2, s x_2, ..., x_n, s x_n) for f in 2n variables."""
    slots = []
    for i in range(n):
        slots += [(i, 1), (i, LaurentRational.t())]
    return substitute_monomials(f, n, slots)


@lru_cache(maxsize=None)
def symbolic_constants(kind: str, mu, nu, max_weight: int | None = None) -> StructureConstantTable:
    """Coefficients of phi(u_mu) * phi^kind(u_nu) in the image basis, as polynomials in q."""
    mu, nu = pt.make(mu), pt.make(nu)
    if kind not in KINDS:
        raise ValueError(f"unknown kind {kind!r}")
    w = weight_of(kind, mu, nu)
    if max_weight is not None and w > max_weight:
        raise BoundExceeded(f"weight {w} exceeds bound {max_weight}")
    n = max(w, 1)
    if kind == "classical":
        tsub, sign, scale = None, 1, 1
        a = hl_p(mu, n).scale(_s_power(pt.n_of(mu)))
        b = hl_p(nu, n).scale(_s_power(pt.n_of(nu)))
    elif kind == "alternating":
        tsub, sign, scale = (1, 2), 1, 2
        a = _doubled_variables(hl_p(mu, 2 * n), n).scale(_s_power(pt.n_of(mu) - pt.weight(mu)))
        b = hl_p(nu, n, tsub).scale(_s_power(2 * pt.n_of(nu)))
    else:
        tsub, sign, scale = (-1, 1), -1, 1
        a = hl_p(mu, n, (1, 2)).squared().scale(_s_power(2 * pt.n_of(mu)))
        b = hl_p(nu, n, tsub).scale(_s_power(pt.n_of(nu), -1))
    coeffs = expand_in_hl(a * b, tsub)
    entries = {}
    for lam, c in coeffs.items():
        v = c / _s_power(scale * pt.n_of(lam), sign)
        entries[lam] = v.subs(1, -1)  # s = 1/q
    return StructureConstantTable(kind, mu, nu, entries)


def bruteforce_constant(kind: str, mu, nu, lam, p: int,
                        size_bound=modlat.DEFAULT_SIZE_BOUND) -> int:
    if kind == "classical":
        return modlat.count_G_classical(lam, mu, nu, p, 1, size_bound)
    return modlat.count_G_paired(kind, lam, mu, nu, p, size_bound)


def pairs_within(kind: str, max_weight: int):
    """All (mu, nu) with weight_of(kind, mu, nu) <= max_weight, in a fixed order."""
    out = []
    f = 2 if kind == "hermitian" else 1
    for mu in pt.iterate(max_weight // f):
        for nu in pt.iterate(max_weight - f * pt.weight(mu)):
            out.append((mu, nu))
    return out


def verify_pair(kind: str, mu, nu, primes, size_bound=modlat.DEFAULT_SIZE_BOUND) -> list[dict]:
    """Check one (mu, nu) against brute force at each prime, for every lam of the right weight."""
    table = symbolic_constants(kind, mu, nu)
    w = weight_of(kind, mu, nu)
    records = []
    for lam in pt.of_weight(w):
        if lam in table.entries and not table.is_integer_polynomial(lam):
            records.append({"id": f"{kind}-integrality", "kind": kind, "mu": list(mu), "nu": list(nu),
                            "lambda": list(lam), "symbolic": str(table.entries[lam]), "status": "fail"})
            continue
        poly = table.poly(lam) if lam in table.entries else [0]
        for p in primes:
            sym = table.value(lam, p)
            brute = bruteforce_constant(kind, mu, nu, lam, p, size_bound)
            records.append({"id": f"{kind}-constant", "kind": kind, "mu": list(mu), "nu": list(nu),
                            "lambda": list(lam), "p": p, "poly": poly, "symbolic": int(sym),
                            "brute": brute, "status": "pass" if sym == brute else "fail"})
    return records


def verify_kind(kind: str, max_weight: int, primes, size_bound=modlat.DEFAULT_SIZE_BOUND) -> list[dict]:
    records = []
    for mu, nu in pairs_within(kind, max_weight):
        records += verify_pair(kind, mu, nu, primes, size_bound)
    return records


def act_sequence(kind: str, mus, nu) -> dict:
    """u_{mus[-1]} * ... * u_{mus[0]} * u_nu by repeated module action, as {lam: poly in q}."""
    state = {pt.make(nu): LaurentRational.const(1)}
    for mu in mus:
        nxt: dict = {}
        for kappa, c in state.items():
            for lam, v in symbolic_constants(kind, mu, kappa).entries.items():
                nxt[lam] = nxt[lam] + c * v if lam in nxt else c * v
        state = {k: v for k, v in nxt.items() if not v.is_zero()}
    return state


def act_product(kind: str, mu1, mu2, nu) -> dict:
    """(u_{mu2} u_{mu1}) * u_nu: first the Hall product, then the action.

    Hermitian modules live over the ring whose residue field has q^2 elements, so the
    acting Hall algebra has its constants evaluated at q^2.
    """
    out: dict = {}
    power = 2 if kind == "hermitian" else 1
    for rho, c in symbolic_constants("classical", mu2, mu1).entries.items():
        c = c.subs(1, power)
        for lam, v in symbolic_constants(kind, rho, nu).entries.items():
            out[lam] = out[lam] + c * v if lam in out else c * v
    return {k: v for k, v in out.items() if not v.is_zero()}
