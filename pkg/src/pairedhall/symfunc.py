"""Symmetric polynomials in the monomial basis and Hall-Littlewood polynomials.

Coefficients are LaurentRationals in one formal parameter t. A basis whose
parameter is a transform of t (for example t -> t^2 or t -> -t) is requested with
``tsub=(c, k)``, meaning every coefficient has t replaced by c*t^k.
"""
from __future__ import annotations

import math
from collections import defaultdict
from fractions import Fraction
from functools import lru_cache
from itertools import permutations

from . import partitions as pt
from .exactalg import (LaurentPoly, LaurentRational, ONE, ZERO, as_rational,
                       exact_div, format_rational, parse_rational, pochhammer)


class LengthExceedsVars(ValueError):
    """A partition longer than the number of variables was requested."""


class DivergentProduct(ArithmeticError):
    """A Cauchy kernel factor has |x y| >= 1."""


# ---------------------------------------------------------------- SymPoly

@lru_cache(maxsize=None)
def orbit(lam: tuple, n: int) -> tuple:
    """Distinct rearrangements of lam padded with zeros to length n."""
    if len(lam) > n:
        return ()
    padded = lam + (0,) * (n - len(lam))
    return tuple(sorted(set(permutations(padded)), reverse=True))


@lru_cache(maxsize=None)
def monomial_product(alpha: tuple, beta: tuple, n: int) -> dict:
    """m_alpha * m_beta in n variables as {gamma: integer coefficient}."""
    out: dict = defaultdict(int)
    ob = orbit(beta, n)
    for a in orbit(alpha, n):
        for b in ob:
            s = tuple(x + y for x, y in zip(a, b))
            if all(s[i] >= s[i + 1] for i in range(n - 1)):
                out[pt.make(s)] += 1
    return dict(out)


class SymPoly:
    """Sum of coefficient * m_lambda(x_1..x_n)."""

    __slots__ = ("nvars", "terms")

    def __init__(self, nvars: int, terms=None):
        if nvars < 0:
            raise ValueError("nvars must be nonnegative")
        self.nvars = nvars
        clean = {}
        for lam, c in (terms or {}).items():
            lam = pt.make(lam)
            if len(lam) > nvars:
                raise LengthExceedsVars(f"{lam} has more than {nvars} parts")
            c = as_rational(c)
            if not c.is_zero():
                clean[lam] = c
        self.terms = clean

    @classmethod
    def one(cls, n: int) -> "SymPoly":
        return cls(n, {(): ONE})

    @classmethod
    def monomial(cls, lam, n: int) -> "SymPoly":
        return cls(n, {tuple(lam): ONE})

    def coeff(self, lam) -> LaurentRational:
        return self.terms.get(tuple(lam), ZERO)

    def is_zero(self) -> bool:
        return not self.terms

    def _check(self, other):
        if not isinstance(other, SymPoly):
            return NotImplemented
        if other.nvars != self.nvars:
            raise ValueError("variable counts differ")
        return other

    def __add__(self, other):
        other = self._check(other)
        if other is NotImplemented:
            return NotImplemented
        t = dict(self.terms)
        for lam, c in other.terms.items():
            t[lam] = t[lam] + c if lam in t else c
        return SymPoly(self.nvars, t)

    def __neg__(self):
        return SymPoly(self.nvars, {k: -v for k, v in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c) -> "SymPoly":
        c = as_rational(c)
        return SymPoly(self.nvars, {k: v * c for k, v in self.terms.items()})

    def __mul__(self, other):
        if not isinstance(other, SymPoly):
            return self.scale(other)
        self._check(other)
        acc: dict = {}
        for a, ca in self.terms.items():
            for b, cb in other.terms.items():
                cab = ca * cb
                for g, k in monomial_product(a, b, self.nvars).items():
                    v = cab * k
                    acc[g] = acc[g] + v if g in acc else v
        return SymPoly(self.nvars, acc)

    __rmul__ = scale

    def __eq__(self, other):
        if not isinstance(other, SymPoly):
            return NotImplemented
        return self.nvars == other.nvars and self.terms == other.terms

    def __repr__(self):
        inner = ", ".join(f"{list(k)}: {v}" for k, v in sorted(self.terms.items(), reverse=True))
        return f"SymPoly(n={self.nvars}, {{{inner}}})"

    def subs_t(self, c, k: int) -> "SymPoly":
        return SymPoly(self.nvars, {lam: v.subs(c, k) for lam, v in self.terms.items()})

    def eval_t(self, t) -> dict:
        """Coefficients evaluated at a rational t."""
        return {lam: v.eval(t) for lam, v in self.terms.items()}

    def restrict(self, n: int) -> "SymPoly":
        """Set the variables beyond the n-th to zero."""
        return SymPoly(n, {lam: c for lam, c in self.terms.items() if len(lam) <= n})

    def squared(self) -> "SymPoly":
        """f(x_1^2, ..., x_n^2), using m_lam(x^2) = m_{2 lam}(x)."""
        return SymPoly(self.nvars, {tuple(2 * x for x in lam): c for lam, c in self.terms.items()})

    def expand(self) -> dict:
        """Brute expansion {exponent vector: coefficient}."""
        out = {}
        for lam, c in self.terms.items():
            for a in orbit(lam, self.nvars):
                out[a] = c
        return out

    def evaluate(self, xs, t) -> Fraction:
        """Numeric value at x = xs (length nvars) and parameter t."""
        if len(xs) != self.nvars:
            raise ValueError("wrong number of variable values")
        xs = [Fraction(x) for x in xs]
        total = Fraction(0)
        for lam, c in self.terms.items():
            s = Fraction(0)
            for a in orbit(lam, self.nvars):
                s += math.prod((x ** e for x, e in zip(xs, a)), start=Fraction(1))
            total += c.eval(t) * s
        return total

    def to_json(self) -> dict:
        return {"nvars": self.nvars,
                "terms": [{"partition": list(k), "coeff": format_rational(v)}
                          for k, v in sorted(self.terms.items(), key=_lexdesc_key)]}

    @classmethod
    def from_json(cls, obj) -> "SymPoly":
        return cls(obj["nvars"], {tuple(d["partition"]): parse_rational(d["coeff"])
                                  for d in obj["terms"]})


def _lexdesc_key(item):
    lam = item[0]
    return (pt.weight(lam), tuple(-x for x in lam))


def from_polynomial(poly: dict, n: int) -> SymPoly:
    """Read a symmetric polynomial {exponent vector: coeff} at its partition exponents."""
    return SymPoly(n, {pt.make(a): c for a, c in poly.items()
                       if all(a[i] >= a[i + 1] for i in range(n - 1))})


def substitute_monomials(f: SymPoly, n_out: int, slots) -> SymPoly:
    """f(y) with y_j = c_j * x_{v_j}; slots[j] = (v_j, c_j) with c_j a scalar.

    The result is read off at partition exponents, so the caller must ensure the
    substituted polynomial is symmetric in x.
    """
    if len(slots) != f.nvars:
        raise ValueError("one slot per input variable is required")
    factors = [as_rational(c) for _, c in slots]
    pow_cache: dict = {}

    def fpow(j, e):
        key = (j, e)
        if key not in pow_cache:
            pow_cache[key] = factors[j] ** e
        return pow_cache[key]

    acc: dict = {}
    for lam, c in f.terms.items():
        for a in orbit(lam, f.nvars):
            e = [0] * n_out
            for j, aj in enumerate(a):
                e[slots[j][0]] += aj
            if any(e[i] < e[i + 1] for i in range(n_out - 1)):
                continue
            v = c
            for j, aj in enumerate(a):
                if aj:
                    v = v * fpow(j, aj)
            key = pt.make(e)
            acc[key] = acc[key] + v if key in acc else v
    return SymPoly(n_out, acc)


# ------------------------------------------------------------ branching

def _tpoly_one_minus_power(m: int) -> LaurentPoly:
    return LaurentPoly({0: 1, m: -1})


@lru_cache(maxsize=None)
def strip_weight(kind: str, lam: tuple, mu: tuple) -> LaurentPoly:
    """Single-variable coefficient of the skew polynomial on a horizontal strip lam/mu.

    P uses prod over columns j with theta'_j = 0, theta'_{j+1} = 1 of (1 - t^{m_j(mu)});
    Q uses prod over j with theta'_j = 1, theta'_{j+1} = 0 of (1 - t^{m_j(lam)}).
    """
    lc, mc = pt.conjugate(lam), pt.conjugate(mu)
    width = len(lc) + 1
    lc = lc + (0,) * (width - len(lc))
    mc = mc + (0,) * (width - len(mc))
    theta = [a - b for a, b in zip(lc, mc)]
    out = LaurentPoly.const(1)
    if kind == "P":
        mult = pt.multiplicities(mu)
        for j in range(1, width):
            if theta[j - 1] == 0 and theta[j] == 1:
                out = out * _tpoly_one_minus_power(mult.get(j, 0))
    else:
        mult = pt.multiplicities(lam)
        for j in range(1, width):
            if theta[j - 1] == 1 and theta[j] == 0:
                out = out * _tpoly_one_minus_power(mult.get(j, 0))
    return out


@lru_cache(maxsize=None)
def _strips(lam: tuple) -> tuple:
    return tuple(pt.horizontal_strips_below(lam))


@lru_cache(maxsize=None)
def _skew_coeff(kind: str, lam: tuple, mu: tuple, k: int, gamma: tuple) -> LaurentPoly:
    """Coefficient of m_gamma in the k-variable skew polynomial, by peeling one variable."""
    if k == 0:
        return LaurentPoly.const(1) if lam == mu and not gamma else LaurentPoly()
    last = gamma[k - 1] if len(gamma) >= k else 0
    head = gamma[:k - 1] if len(gamma) >= k else gamma
    if len(head) > k - 1:
        return LaurentPoly()
    target = pt.weight(lam) - last
    out = LaurentPoly()
    for nu in _strips(lam):
        if pt.weight(nu) != target or not pt.contains(nu, mu):
            continue
        inner = _skew_coeff(kind, nu, mu, k - 1, head)
        if not inner.is_zero():
            out = out + strip_weight(kind, lam, nu) * inner
    return out


def _skew_branching_poly(kind, lam, mu, k) -> SymPoly:
    d = pt.weight(lam) - pt.weight(mu)
    if d < 0 or not pt.contains(lam, mu):
        return SymPoly(k)
    terms = {}
    for gamma in pt.of_weight(d, max_length=k):
        c = _skew_coeff(kind, lam, mu, k, gamma)
        if not c.is_zero():
            terms[gamma] = LaurentRational(c)
    return SymPoly(k, terms)


# ----------------------------------------------------- definition route

def _mul_int_poly(a: dict, b: dict) -> dict:
    out: dict = defaultdict(int)
    for ea, ca in a.items():
        for eb, cb in b.items():
            out[tuple(x + y for x, y in zip(ea, eb))] += ca * cb
    return {e: c for e, c in out.items() if c}


def _perm_sign(seq) -> int:
    inv = sum(1 for i in range(len(seq)) for j in range(i + 1, len(seq)) if seq[i] < seq[j])
    return -1 if inv % 2 else 1


def _divide_by_difference(poly: dict, i: int, j: int) -> dict:
    """Exact quotient poly / (x_i - x_j) for integer polynomials keyed by exponent tuples."""
    groups: dict = defaultdict(dict)
    for e, c in poly.items():
        rest = e[:i] + (0,) + e[i + 1:]
        groups[e[i]][rest] = c
    if not groups:
        return {}
    quotient: dict = {}
    carry: dict = {}
    for deg in range(max(groups), 0, -1):
        cur = dict(groups.get(deg, {}))
        for e, c in carry.items():
            e2 = e[:j] + (e[j] + 1,) + e[j + 1:]
            cur[e2] = cur.get(e2, 0) + c
        cur = {e: c for e, c in cur.items() if c}
        for e, c in cur.items():
            quotient[e[:i] + (deg - 1,) + e[i + 1:]] = c
        carry = cur
    rem = dict(groups.get(0, {}))
    for e, c in carry.items():
        e2 = e[:j] + (e[j] + 1,) + e[j + 1:]
        rem[e2] = rem.get(e2, 0) + c
    if any(rem.values()):
        raise ArithmeticError("symmetrization is not divisible by the Vandermonde")
    return quotient


def _v_lambda(lam: tuple, n: int) -> LaurentPoly:
    """prod_{i>=0} (t;t)_{m_i} / (1-t)^{m_i}, with m_0 = n - len(lam)."""
    mult = pt.multiplicities(lam)
    mult[0] = n - len(lam)
    out = LaurentPoly.const(1)
    for m in mult.values():
        for r in range(1, m + 1):
            out = out * LaurentPoly({e: 1 for e in range(r)})
    return out


def _hl_by_symmetrization(lam: tuple, n: int) -> SymPoly:
    # integer polynomials in (x_1..x_n, t) keyed by (e_1, ..., e_n, e_t)
    lam_pad = lam + (0,) * (n - len(lam))
    f = {lam_pad + (0,): 1}
    for i in range(n):
        for j in range(i + 1, n):
            xi = tuple(1 if k == i else 0 for k in range(n))
            xj = tuple(1 if k == j else 0 for k in range(n))
            f = _mul_int_poly(f, {xi + (0,): 1, xj + (1,): -1})
    # antisymmetrize: only exponent vectors with distinct entries survive
    d: dict = defaultdict(int)
    for e, c in f.items():
        xs = e[:n]
        if len(set(xs)) < n:
            continue
        beta = tuple(sorted(xs, reverse=True))
        d[(beta, e[n])] += _perm_sign(xs) * c
    anti: dict = defaultdict(int)
    for (beta, et), c in d.items():
        if not c:
            continue
        for perm in permutations(range(n)):
            vec = tuple(beta[perm[k]] for k in range(n))
            anti[vec + (et,)] += _perm_sign(vec) * c
    anti = {e: c for e, c in anti.items() if c}
    for i in range(n):
        for j in range(i + 1, n):
            anti = _divide_by_difference(anti, i, j)
    vl = _v_lambda(lam, n)
    coeffs: dict = defaultdict(dict)
    for e, c in anti.items():
        xs = e[:n]
        if all(xs[k] >= xs[k + 1] for k in range(n - 1)):
            coeffs[pt.make(xs)][e[n]] = c
    terms = {}
    for gamma, tp in coeffs.items():
        terms[gamma] = LaurentRational(exact_div(LaurentPoly(tp), vl))
    out = SymPoly(n, terms)
    if out.coeff(lam) != ONE:
        raise ArithmeticError(f"P_{lam} from symmetrization is not monic")
    return out


# ------------------------------------------------------------ public API

@lru_cache(maxsize=None)
def _hl_p_cached(lam: tuple, n: int, method: str) -> SymPoly:
    if method == "definition":
        return _hl_by_symmetrization(lam, n)
    return _skew_branching_poly("P", lam, (), n)


def _apply_tsub(f: SymPoly, tsub) -> SymPoly:
    if tsub is None or tuple(tsub) == (1, 1):
        return f
    return f.subs_t(*tsub)


def hl_p(lam, n: int, tsub=None, method: str = "branching") -> SymPoly:
    """P_lam(x_1..x_n; t) in the monomial basis."""
    lam = pt.make(lam)
    if len(lam) > n:
        raise LengthExceedsVars(f"{lam} needs at least {len(lam)} variables")
    if method not in ("branching", "definition"):
        raise ValueError(f"unknown method {method!r}")
    return _apply_tsub(_hl_p_cached(lam, n, method), tsub)


def b_lambda(lam) -> LaurentRational:
    """prod_i (t;t)_{m_i(lam)}, the factor with Q_lam = b_lam P_lam."""
    out = ONE
    for m in pt.multiplicities(lam).values():
        out = out * pochhammer(LaurentRational.t(), LaurentRational.t(), m)
    return out


def hl_q(lam, n: int, tsub=None, method: str = "branching") -> SymPoly:
    lam = pt.make(lam)
    f = hl_p(lam, n, method=method).scale(b_lambda(lam))
    return _apply_tsub(f, tsub)


def expand_in_hl(f: SymPoly, tsub=None) -> dict:
    """Coefficients c with f = sum c[lam] P_lam(x; t'), where t' is t after tsub.

    P_lam = m_lam + (lex-smaller terms), so peeling the lex-largest monomial is a
    back-substitution.
    """
    rem = dict(f.terms)
    out = {}
    while rem:
        top = max(rem, key=lambda lam: (pt.weight(lam), lam))
        c = rem[top]
        out[top] = c
        for lam, v in hl_p(top, f.nvars, tsub).terms.items():
            nv = rem[lam] - c * v if lam in rem else -(c * v)
            if nv.is_zero():
                rem.pop(lam, None)
            else:
                rem[lam] = nv
    return out


def combine_hl(coeffs: dict, n: int, tsub=None) -> SymPoly:
    """sum coeffs[lam] * P_lam in n variables (inverse of expand_in_hl)."""
    out = SymPoly(n)
    for lam, c in coeffs.items():
        out = out + hl_p(lam, n, tsub).scale(c)
    return out


@lru_cache(maxsize=None)
def _skew_solve(kind: str, lam: tuple, k: int) -> dict:
    """Normative skew polynomials: split the variables of P_lam (or Q_lam) as x (k of them)
    and y (n = |lam| of them), then expand each x-monomial coefficient in the y-basis."""
    n = max(pt.weight(lam), 1)
    whole = hl_p(lam, k + n)
    split: dict = defaultdict(lambda: SymPoly(n))
    for kappa, c in whole.terms.items():
        for alpha in _sub_multisets(kappa):
            if len(alpha) > k:
                continue
            beta = _multiset_minus(kappa, alpha)
            if len(beta) > n:
                continue
            split[alpha] = split[alpha] + SymPoly(n, {beta: c})
    out: dict = defaultdict(dict)
    for alpha, fy in split.items():
        for mu, d in expand_in_hl(fy).items():
            if kind == "Q":
                d = d * b_lambda(lam) / b_lambda(mu)
            out[mu][alpha] = d
    return {mu: SymPoly(k, terms) for mu, terms in out.items()}


def _sub_multisets(kappa: tuple):
    mult = sorted(pt.multiplicities(kappa).items(), reverse=True)

    def rec(i):
        if i == len(mult):
            yield ()
            return
        part, m = mult[i]
        for rest in rec(i + 1):
            for r in range(m + 1):
                yield (part,) * r + rest

    yield from rec(0)


def _multiset_minus(kappa, alpha):
    rem = list(kappa)
    for a in alpha:
        rem.remove(a)
    return tuple(rem)


def skew(kind: str, lam, mu, k: int, tsub=None, method: str = "solve") -> SymPoly:
    """Skew P_{lam/mu} or Q_{lam/mu} in k variables."""
    lam, mu = pt.make(lam), pt.make(mu)
    if kind not in ("P", "Q"):
        raise ValueError("kind must be 'P' or 'Q'")
    if not pt.contains(lam, mu):
        return SymPoly(k)
    if method == "solve":
        f = _skew_solve(kind, lam, k).get(mu, SymPoly(k))
    elif method == "branching":
        f = _skew_branching_poly(kind, lam, mu, k)
    else:
        raise ValueError(f"unknown method {method!r}")
    return _apply_tsub(f, tsub)


# ------------------------------------------------ numeric evaluation

def skew_single(kind: str, lam, mu, x, t):
    """Skew polynomial in one variable x: weight(t) * x^{|lam/mu|} on horizontal strips, else 0."""
    if not pt.is_horizontal_strip(lam, mu):
        return 0 * x
    w = strip_weight(kind, tuple(lam), tuple(mu))
    return _eval_poly_at(w, t) * x ** (pt.weight(lam) - pt.weight(mu))


def _eval_poly_at(p: LaurentPoly, t):
    if isinstance(t, LaurentRational):
        out = ZERO
        for e, v in p.items():
            out = out + t ** e * v
        return out
    return p.eval(t)


def hl_eval(lam, xs, t):
    """P_lam(x_1..x_k; t) at numeric points by peeling one variable at a time."""
    lam = pt.make(lam)
    xs = tuple(xs)
    cache: dict = {}

    def rec(nu, k):
        if k == 0:
            return Fraction(1) if not nu else Fraction(0)
        if len(nu) > k:
            return Fraction(0)
        key = (nu, k)
        if key not in cache:
            total = Fraction(0)
            for mu in _strips(nu):
                if len(mu) > k - 1:
                    continue
                total += skew_single("P", nu, mu, xs[k - 1], t) * rec(mu, k - 1)
            cache[key] = total
        return cache[key]

    return rec(lam, len(xs))


# ---------------------------------------------- principal specializations

def principal_skew(kind: str, lam, mu, u, t):
    """Skew P (or Q) at the geometric sequence u, u t, u t^2, ... in closed form.

    P: u^{|lam|-|mu|} t^{n(lam/mu)} prod_i (t^{1+lam'_i-mu'_i}; t)_{m_i(mu)} / (t;t)_{m_i(lam)},
    Q: same with denominator (t;t)_{m_i(mu)}.
    """
    lam, mu = pt.make(lam), pt.make(mu)
    if not pt.contains(lam, mu):
        return 0 * u
    lc, mc = pt.conjugate(lam), pt.conjugate(mu)
    mc = mc + (0,) * (len(lc) - len(mc))
    ml, mm = pt.multiplicities(lam), pt.multiplicities(mu)
    out = u ** (pt.weight(lam) - pt.weight(mu)) * t ** pt.skew_n(lam, mu)
    for i in range(1, len(lc) + 1):
        num = pochhammer(t ** (1 + lc[i - 1] - mc[i - 1]), t, mm.get(i, 0))
        den = pochhammer(t, t, (ml if kind == "P" else mm).get(i, 0))
        out = out * num / den
    return out


def two_tail_spec(nu, u1, u2, t):
    """P_nu on the union of u1*(1, t, t^2, ...) and u2*(1, t, t^2, ...)."""
    nu = pt.make(nu)
    total = 0 * u1
    for mu in pt.subpartitions(nu):
        total = total + principal_skew("P", nu, mu, u1, t) * principal_skew("P", mu, (), u2, t)
    return total


def cauchy_kernel(rho1, rho2, t) -> Fraction:
    """prod_{i,j} (1 - t x_i y_j) / (1 - x_i y_j) over finite lists."""
    out = Fraction(1)
    t = Fraction(t)
    for x in rho1:
        for y in rho2:
            z = Fraction(x) * Fraction(y)
            if abs(z) >= 1:
                raise DivergentProduct(f"|x y| = {abs(z)} >= 1")
            out *= (1 - t * z) / (1 - z)
    return out


def cauchy_kernel_geometric(u1, u2, t, tol: float = 1e-12):
    """Kernel for rho1 = u1*(1,t,...), rho2 = u2*(1,t,...) by truncated products.

    Grouping pairs by i+j = k gives factors ((1 - z t^{k+1}) / (1 - z t^k))^{k+1} with
    z = u1 u2. Returns (value, error bound).
    """
    z, t = float(Fraction(u1) * Fraction(u2)), float(t)
    if abs(z) >= 1 or abs(t) >= 1:
        raise DivergentProduct("geometric kernel needs |u1 u2| < 1 and |t| < 1")
    log_total = 0.0
    k = 0
    while True:
        step = (k + 1) * (math.log1p(-z * t ** (k + 1)) - math.log1p(-z * t ** k))
        log_total += step
        k += 1
        r = abs(t)
        if abs(step) < tol / 10 and abs(z) * r ** k <= 0.5:
            # remaining |log factors| <= sum_{j>=k} 2 (1+r) (j+1) |z| r^j
            tail = 2 * (1 + r) * abs(z) * r ** k * ((k + 1) - k * r) / (1 - r) ** 2
            value = math.exp(log_total)
            return value, value * math.expm1(tail)
        if k > 100000:
            raise DivergentProduct("kernel product did not settle")


def cauchy_kernel_closed(u1, u2, t):
    """The kernel for two geometric sequences telescopes to 1 / (u1 u2; t)_infinity.

    Returns the product (u1 u2; t)_infinity whose reciprocal is the kernel.
    """
    from .exactalg import QPochInf
    return QPochInf(Fraction(u1) * Fraction(u2), Fraction(t))
