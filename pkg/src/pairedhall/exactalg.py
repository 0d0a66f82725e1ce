"""Exact one-parameter algebra: Laurent polynomials and rational functions over Q.

Rationals are fractions.Fraction. Everything here is immutable after construction.
"""
from __future__ import annotations

import math
import re
from fractions import Fraction
from math import gcd, lcm

BigRational = Fraction


class PoleAtPoint(ZeroDivisionError):
    """Denominator vanishes at the evaluation point."""


class ZeroBase(ZeroDivisionError):
    """Evaluation at 0 of an expression with negative exponents."""


def _frac(x) -> Fraction:
    return x if isinstance(x, Fraction) else Fraction(x)


class LaurentPoly:
    """Finite sum of c_e t^e with e in Z and c_e in Q; zero coefficients are never stored."""

    __slots__ = ("_c", "_hash")

    def __init__(self, coeffs=None):
        c = {}
        if coeffs:
            for e, v in dict(coeffs).items():
                v = _frac(v)
                if v:
                    c[int(e)] = v
        self._c = c
        self._hash = None

    @classmethod
    def _raw(cls, c: dict) -> "LaurentPoly":
        obj = cls.__new__(cls)
        obj._c = c
        obj._hash = None
        return obj

    @classmethod
    def const(cls, v) -> "LaurentPoly":
        return cls({0: v})

    @classmethod
    def mono(cls, e: int, v=1) -> "LaurentPoly":
        return cls({e: v})

    # inspection
    def items(self):
        return sorted(self._c.items())

    def coeff(self, e: int) -> Fraction:
        return self._c.get(e, Fraction(0))

    def is_zero(self) -> bool:
        return not self._c

    def is_const(self) -> bool:
        return not self._c or (len(self._c) == 1 and 0 in self._c)

    def min_exp(self) -> int:
        return min(self._c)

    def max_exp(self) -> int:
        return max(self._c)

    def lead(self) -> Fraction:
        return self._c[max(self._c)]

    def is_monomial(self) -> bool:
        return len(self._c) == 1

    # arithmetic
    def __add__(self, other):
        other = _as_poly(other)
        if other is NotImplemented:
            return NotImplemented
        c = dict(self._c)
        for e, v in other._c.items():
            s = c.get(e, 0) + v
            if s:
                c[e] = s
            else:
                c.pop(e, None)
        return LaurentPoly._raw(c)

    __radd__ = __add__

    def __neg__(self):
        return LaurentPoly._raw({e: -v for e, v in self._c.items()})

    def __sub__(self, other):
        other = _as_poly(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = _as_poly(other)
        if other is NotImplemented:
            return NotImplemented
        c: dict[int, Fraction] = {}
        for e1, v1 in self._c.items():
            for e2, v2 in other._c.items():
                e = e1 + e2
                c[e] = c.get(e, 0) + v1 * v2
        return LaurentPoly._raw({e: v for e, v in c.items() if v})

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            if not self.is_monomial():
                raise ValueError("negative power of a non-monomial Laurent polynomial")
            (e, v), = self._c.items()
            return LaurentPoly._raw({e * k: v ** k})
        out = LaurentPoly.const(1)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def shift(self, k: int) -> "LaurentPoly":
        return LaurentPoly._raw({e + k: v for e, v in self._c.items()})

    def scale(self, v) -> "LaurentPoly":
        v = _frac(v)
        if not v:
            return LaurentPoly()
        return LaurentPoly._raw({e: c * v for e, c in self._c.items()})

    def subs(self, c, k: int) -> "LaurentPoly":
        """Substitute t -> c * t^k."""
        c = _frac(c)
        out: dict[int, Fraction] = {}
        for e, v in self._c.items():
            ne = e * k
            out[ne] = out.get(ne, 0) + v * c ** e
        return LaurentPoly._raw({e: v for e, v in out.items() if v})

    def eval(self, x) -> Fraction:
        x = _frac(x)
        if x == 0:
            if any(e < 0 for e in self._c):
                raise ZeroBase("negative exponent at t = 0")
            return self._c.get(0, Fraction(0))
        return sum((v * x ** e for e, v in self._c.items()), Fraction(0))

    def __eq__(self, other):
        other = _as_poly(other)
        if other is NotImplemented:
            return NotImplemented
        return self._c == other._c

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self._c.items()))
        return self._hash

    def __repr__(self):
        return f"LaurentPoly({format_poly(self)!r})"

    def __str__(self):
        return format_poly(self)


def _as_poly(x):
    if isinstance(x, LaurentPoly):
        return x
    if isinstance(x, (int, Fraction)):
        return LaurentPoly.const(x)
    return NotImplemented


# polynomial division on ordinary polynomials (all exponents >= 0)

def _divmod(a: LaurentPoly, b: LaurentPoly):
    if b.is_zero():
        raise ZeroDivisionError("polynomial division by zero")
    rem = dict(a._c)
    db, lb = b.max_exp(), b.lead()
    quo: dict[int, Fraction] = {}
    while rem:
        da = max(rem)
        if da < db:
            break
        f = rem[da] / lb
        s = da - db
        quo[s] = f
        for e, v in b._c.items():
            ne = e + s
            nv = rem.get(ne, 0) - f * v
            if nv:
                rem[ne] = nv
            else:
                rem.pop(ne, None)
    return LaurentPoly._raw(quo), LaurentPoly._raw(rem)


def exact_div(a: LaurentPoly, b: LaurentPoly) -> LaurentPoly:
    """a / b for Laurent polynomials when b divides a; raises ValueError otherwise."""
    if b.is_zero():
        raise ZeroDivisionError("division by zero polynomial")
    if a.is_zero():
        return LaurentPoly()
    sa, sb = a.min_exp(), b.min_exp()
    q, r = _divmod(a.shift(-sa), b.shift(-sb))
    if not r.is_zero():
        raise ValueError("not an exact division")
    return q.shift(sa - sb)


def poly_gcd(a: LaurentPoly, b: LaurentPoly) -> LaurentPoly:
    """Monic gcd of two ordinary polynomials (exponents >= 0)."""
    while not b.is_zero():
        _, r = _divmod(a, b)
        a, b = b, r
    if a.is_zero():
        return a
    return a.scale(1 / a.lead())


def _content_scale(p: LaurentPoly) -> Fraction:
    """Factor making p's coefficients coprime integers with positive leading coefficient."""
    dens = 1
    for v in p._c.values():
        dens = lcm(dens, v.denominator)
    g = 0
    for v in p._c.values():
        g = gcd(g, int(v * dens))
    f = Fraction(dens, g)
    if p.lead() < 0:
        f = -f
    return f


class LaurentRational:
    """num/den with den normalized to coprime integer coefficients, t-adic order 0,
    positive leading coefficient, and gcd(num, den) = 1 up to a monomial."""

    __slots__ = ("num", "den")

    def __init__(self, num, den=None, _canonical=False):
        num = _as_poly(num) if not isinstance(num, LaurentPoly) else num
        if num is NotImplemented:
            raise TypeError(f"cannot build a rational function from {num!r}")
        if den is None:
            den = LaurentPoly.const(1)
            _canonical = True
        elif not isinstance(den, LaurentPoly):
            den = _as_poly(den)
        if den.is_zero():
            raise ZeroDivisionError("zero denominator")
        if not _canonical:
            num, den = _canonicalize(num, den)
        self.num = num
        self.den = den

    @classmethod
    def const(cls, v) -> "LaurentRational":
        return cls(LaurentPoly.const(v))

    @classmethod
    def t(cls, e: int = 1, c=1) -> "LaurentRational":
        return cls(LaurentPoly.mono(e, c))

    def is_poly(self) -> bool:
        return self.den.is_const()

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def as_poly(self) -> LaurentPoly:
        if not self.is_poly():
            raise ValueError(f"{self} is not a Laurent polynomial")
        return self.num.scale(1 / self.den.coeff(0))

    def __add__(self, other):
        other = _as_rat(other)
        if other is NotImplemented:
            return NotImplemented
        if self.is_poly() and other.is_poly():
            return LaurentRational(self.num + other.num, None)
        if self.den == other.den:
            return LaurentRational(self.num + other.num, self.den)
        return LaurentRational(self.num * other.den + other.num * self.den, self.den * other.den)

    __radd__ = __add__

    def __neg__(self):
        return LaurentRational(-self.num, self.den, _canonical=True)

    def __sub__(self, other):
        other = _as_rat(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = _as_rat(other)
        if other is NotImplemented:
            return NotImplemented
        if self.is_poly() and other.is_poly():
            return LaurentRational(self.num * other.num, None)
        return LaurentRational(self.num * other.num, self.den * other.den)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = _as_rat(other)
        if other is NotImplemented:
            return NotImplemented
        if other.is_zero():
            raise ZeroDivisionError("division by zero rational function")
        if self.is_poly() and other.num.is_monomial() and other.is_poly():
            (e, v), = other.num._c.items()
            return LaurentRational(self.num.shift(-e).scale(1 / v), None)
        return LaurentRational(self.num * other.den, self.den * other.num)

    def __rtruediv__(self, other):
        other = _as_rat(other)
        if other is NotImplemented:
            return NotImplemented
        return other / self

    def __pow__(self, k: int):
        if k < 0:
            return LaurentRational.const(1) / (self ** (-k))
        if self.is_poly():
            return LaurentRational(self.num ** k, None)
        return LaurentRational(self.num ** k, self.den ** k, _canonical=True)

    def subs(self, c, k: int) -> "LaurentRational":
        """Substitute t -> c * t^k (k may be negative)."""
        return LaurentRational(self.num.subs(c, k), self.den.subs(c, k))

    def eval(self, x) -> Fraction:
        x = _frac(x)
        if x == 0 and any(e < 0 for e in self.num._c):
            raise ZeroBase("negative exponent at t = 0")
        d = self.den.eval(x)
        if d == 0:
            raise PoleAtPoint(f"denominator vanishes at t = {x}")
        return self.num.eval(x) / d

    def __eq__(self, other):
        other = _as_rat(other)
        if other is NotImplemented:
            return NotImplemented
        return self.num == other.num and self.den == other.den

    def __hash__(self):
        return hash((self.num, self.den))

    def __repr__(self):
        return f"LaurentRational({str(self)!r})"

    def __str__(self):
        return format_rational(self)


def _canonicalize(num: LaurentPoly, den: LaurentPoly):
    if num.is_zero():
        return LaurentPoly(), LaurentPoly.const(1)
    s = den.min_exp()
    den = den.shift(-s)
    num = num.shift(-s)
    if not den.is_const():
        sn = num.min_exp()
        g = poly_gcd(num.shift(-sn), den)
        if not g.is_const():
            num = exact_div(num, g)
            den = exact_div(den, g)
    f = _content_scale(den)
    return num.scale(f), den.scale(f)


def _as_rat(x):
    if isinstance(x, LaurentRational):
        return x
    if isinstance(x, LaurentPoly):
        return LaurentRational(x)
    if isinstance(x, (int, Fraction)):
        return LaurentRational(LaurentPoly.const(x), None)
    return NotImplemented


def as_rational(x) -> LaurentRational:
    r = _as_rat(x)
    if r is NotImplemented:
        raise TypeError(f"not an exact scalar: {x!r}")
    return r


ONE = LaurentRational.const(1)
ZERO = LaurentRational.const(0)
T = LaurentRational.t()


# string form

def format_poly(p: LaurentPoly, var: str = "t") -> str:
    if p.is_zero():
        return "0"
    out = []
    for e, v in p.items():
        sign = "-" if v < 0 else "+"
        a = abs(v)
        if e == 0:
            body = str(a)
        else:
            pw = var if e == 1 else f"{var}^{e}"
            body = pw if a == 1 else f"{a}*{pw}"
        if not out:
            out.append(body if sign == "+" else "-" + body)
        else:
            out.append(f" {sign} {body}")
    return "".join(out)


def format_rational(r: LaurentRational, var: str = "t") -> str:
    return f"({format_poly(r.num, var)})/({format_poly(r.den, var)})"


_TERM = re.compile(r"([+-]?)(?:(\d+(?:/\d+)?)(?:\*[a-z](?:\^(-?\d+))?|(\*[a-z]))?|[a-z](?:\^(-?\d+))?)")


def parse_poly(text: str) -> LaurentPoly:
    s = text.replace(" ", "")
    if s in ("", "0"):
        return LaurentPoly()
    coeffs: dict[int, Fraction] = {}
    pos = 0
    while pos < len(s):
        m = _TERM.match(s, pos)
        if not m or m.end() == pos or (pos and not m.group(1)):
            raise ValueError(f"cannot parse {text!r} at offset {pos}")
        sign = -1 if m.group(1) == "-" else 1
        tok = m.group(0).lstrip("+-")
        if m.group(2) is None:
            c, e = Fraction(1), int(m.group(5) or 1)
        else:
            c = Fraction(m.group(2))
            e = 0 if "*" not in tok else int(m.group(3) or 1)
        coeffs[e] = coeffs.get(e, 0) + sign * c
        pos = m.end()
    return LaurentPoly(coeffs)


def parse_rational(text: str) -> LaurentRational:
    m = re.fullmatch(r"\s*\((.*)\)\s*/\s*\((.*)\)\s*", text)
    if not m:
        return LaurentRational(parse_poly(text))
    return LaurentRational(parse_poly(m.group(1)), parse_poly(m.group(2)))


# q-series primitives

def pochhammer(a, q, n: int):
    """(a; q)_n = prod_{j<n} (1 - a q^j); works for Fractions and LaurentRationals alike."""
    if n < 0:
        raise ValueError("pochhammer needs n >= 0")
    out = 1
    term = a
    for _ in range(n):
        out = out * (1 - term)
        term = term * q
    return out if not isinstance(out, int) else Fraction(out)


def qbinomial(n: int, m: int, t=None):
    """Gaussian binomial [n m]_t as a rational function of t (or at a value of t)."""
    if m < 0:
        raise ValueError("qbinomial needs m >= 0")
    tt = T if t is None else t
    num = 1
    den = 1
    for j in range(1, m + 1):
        num = num * (1 - tt ** (n - m + j))
        den = den * (1 - tt ** j)
    if t is None:
        return as_rational(num) / as_rational(den)
    return Fraction(num) / Fraction(den) if isinstance(num, int) else num / den


def evaluate(f: LaurentRational, x) -> Fraction:
    return as_rational(f).eval(x)


class QPochInf:
    """The infinite product (z; q)_inf = prod_{k>=0} (1 - z q^k) with |q| < 1, z and q rational."""

    __slots__ = ("z", "q")

    def __init__(self, z, q):
        self.z, self.q = _frac(z), _frac(q)
        if abs(self.q) >= 1:
            raise ValueError("infinite q-Pochhammer needs |q| < 1")

    def head(self, j: int) -> Fraction:
        """prod_{k<j} (1 - z q^k), exact."""
        return pochhammer(self.z, self.q, j)

    def shifted(self, j: int) -> "QPochInf":
        """The tail prod_{k>=j} (1 - z q^k) as a product of the same shape."""
        return QPochInf(self.z * self.q ** j, self.q)

    def value(self, tol: float = 1e-15):
        """(float value, absolute error bound)."""
        r = abs(float(self.q))
        az = abs(float(self.z))
        k = 0
        while az * r ** k > 0.5 or 2 * az * r ** k / (1 - r) >= tol:
            k += 1
        head = float(self.head(k))
        eps = 2 * az * r ** k / (1 - r)
        tail = self.shifted(k)
        # first-order correction keeps the truncation error well inside the bound
        approx = head * _float_tail(tail)
        return approx, abs(head) * math.expm1(eps) if eps else 0.0

    def __eq__(self, other):
        return isinstance(other, QPochInf) and (self.z, self.q) == (other.z, other.q)

    def __hash__(self):
        return hash((self.z, self.q))

    def __repr__(self):
        return f"QPochInf({self.z}, {self.q})"


def _float_tail(p: QPochInf) -> float:
    out = 1.0
    z, q = float(p.z), float(p.q)
    term = z
    while abs(term) > 1e-18:
        out *= 1 - term
        term *= q
    return out
