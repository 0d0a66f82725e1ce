"""Coefficient rings Z/p^k and the unramified quadratic Galois rings GR(p, k) = (Z/p^k)[xi], xi^2 = c."""
from __future__ import annotations

from dataclasses import dataclass


class EvenPrimeUnsupported(ValueError):
    """Hermitian rings are only built for odd p."""


def is_prime(p: int) -> bool:
    if p < 2:
        return False
    f = 2
    while f * f <= p:
        if p % f == 0:
            return False
        f += 1
    return True


def smallest_nonresidue(p: int) -> int:
    for c in range(2, p):
        if pow(c, (p - 1) // 2, p) == p - 1:
            return c
    raise ValueError(f"no quadratic nonresidue mod {p}")


@dataclass(frozen=True)
class CyclicRing:
    p: int
    k: int

    @property
    def modulus(self) -> int:
        return self.p ** self.k

    @property
    def residue_size(self) -> int:
        return self.p

    def __call__(self, value: int) -> "CyclicElem":
        return CyclicElem(self, value % self.modulus)

    def elements(self):
        return [CyclicElem(self, v) for v in range(self.modulus)]

    def describe(self) -> dict:
        return {"p": self.p, "k": self.k}

    def __str__(self):
        return f"Z/{self.p}^{self.k}"


@dataclass(frozen=True)
class GaloisRing:
    p: int
    k: int
    c: int

    @property
    def modulus(self) -> int:
        return self.p ** self.k

    @property
    def residue_size(self) -> int:
        return self.p * self.p

    def __call__(self, a: int, b: int = 0) -> "GaloisElem":
        m = self.modulus
        return GaloisElem(self, a % m, b % m)

    def elements(self):
        m = self.modulus
        return [GaloisElem(self, a, b) for a in range(m) for b in range(m)]

    def base(self) -> CyclicRing:
        return CyclicRing(self.p, self.k)

    def describe(self) -> dict:
        return {"p": self.p, "k": self.k, "c": self.c}

    def __str__(self):
        return f"GR({self.p},{self.k};{self.c})"


def make_cyclic_ring(p: int, k: int) -> CyclicRing:
    if not is_prime(p) or k < 1:
        raise ValueError(f"need a prime p and k >= 1, got p={p}, k={k}")
    return CyclicRing(p, k)


def make_galois_ring(p: int, k: int) -> GaloisRing:
    if p == 2:
        raise EvenPrimeUnsupported("the quadratic Galois ring is only supported for odd p")
    if not is_prime(p) or k < 1:
        raise ValueError(f"need an odd prime p and k >= 1, got p={p}, k={k}")
    return GaloisRing(p, k, smallest_nonresidue(p))


def _vp(x: int, p: int, k: int) -> int:
    if x == 0:
        return k
    v = 0
    while x % p == 0 and v < k:
        x //= p
        v += 1
    return v


@dataclass(frozen=True)
class CyclicElem:
    ring: CyclicRing
    value: int

    def _other(self, o):
        if isinstance(o, int):
            return o
        if isinstance(o, CyclicElem) and o.ring == self.ring:
            return o.value
        return NotImplemented

    def __add__(self, o):
        v = self._other(o)
        return NotImplemented if v is NotImplemented else self.ring(self.value + v)

    __radd__ = __add__

    def __sub__(self, o):
        v = self._other(o)
        return NotImplemented if v is NotImplemented else self.ring(self.value - v)

    def __neg__(self):
        return self.ring(-self.value)

    def __mul__(self, o):
        v = self._other(o)
        return NotImplemented if v is NotImplemented else self.ring(self.value * v)

    __rmul__ = __mul__

    def is_unit(self) -> bool:
        return self.value % self.ring.p != 0

    def __str__(self):
        return str(self.value)


@dataclass(frozen=True)
class GaloisElem:
    ring: GaloisRing
    a: int
    b: int

    def _other(self, o):
        if isinstance(o, int):
            return o % self.ring.modulus, 0
        if isinstance(o, GaloisElem) and o.ring == self.ring:
            return o.a, o.b
        return NotImplemented

    def __add__(self, o):
        v = self._other(o)
        if v is NotImplemented:
            return NotImplemented
        return self.ring(self.a + v[0], self.b + v[1])

    __radd__ = __add__

    def __sub__(self, o):
        v = self._other(o)
        if v is NotImplemented:
            return NotImplemented
        return self.ring(self.a - v[0], self.b - v[1])

    def __neg__(self):
        return self.ring(-self.a, -self.b)

    def __mul__(self, o):
        v = self._other(o)
        if v is NotImplemented:
            return NotImplemented
        c, d = v
        return self.ring(self.a * c + self.ring.c * self.b * d, self.a * d + self.b * c)

    __rmul__ = __mul__

    def conjugate(self) -> "GaloisElem":
        return self.ring(self.a, -self.b)

    def is_unit(self) -> bool:
        return norm(self).is_unit()

    def __str__(self):
        return str(self.a) if self.b == 0 else f"{self.a}+{self.b}*x"


def conjugate(x: GaloisElem) -> GaloisElem:
    return x.conjugate()


def norm(x: GaloisElem) -> CyclicElem:
    """x times its conjugate: a^2 - c b^2 in Z/p^k."""
    r = x.ring
    return CyclicElem(r.base(), (x.a * x.a - r.c * x.b * x.b) % r.modulus)


def valuation(x) -> int:
    """Largest j <= k with x in p^j R (k for zero)."""
    r = x.ring
    if isinstance(x, CyclicElem):
        return _vp(x.value, r.p, r.k)
    return min(_vp(x.a, r.p, r.k), _vp(x.b, r.p, r.k))
