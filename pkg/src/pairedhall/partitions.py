"""Integer partitions stored as plain tuples of positive parts.

A partition is a weakly decreasing tuple of positive ints; trailing zeros are
stripped on construction so equal partitions compare equal as tuples.
"""
from __future__ import annotations

from collections import Counter
from math import comb
from typing import Iterable, Iterator


class NotDoubled(ValueError):
    """Raised when a partition has some odd multiplicity."""


Partition = tuple


def make(parts: Iterable[int]) -> tuple[int, ...]:
    """Canonical partition from a weakly decreasing sequence (zeros allowed at the end)."""
    out = tuple(int(x) for x in parts)
    while out and out[-1] == 0:
        out = out[:-1]
    for i, x in enumerate(out):
        if x <= 0:
            raise ValueError(f"non-positive part in {out}")
        if i and out[i - 1] < x:
            raise ValueError(f"parts not weakly decreasing: {out}")
    return out


def parse(text: str) -> tuple[int, ...]:
    """Parse the comma-separated command line form; "" is the empty partition."""
    text = text.strip().strip("()[]")
    if not text:
        return ()
    return make(int(s) for s in text.split(",") if s.strip())


def conjugate(lam: tuple[int, ...]) -> tuple[int, ...]:
    if not lam:
        return ()
    return tuple(sum(1 for x in lam if x >= k) for k in range(1, lam[0] + 1))


def weight(lam: tuple[int, ...]) -> int:
    return sum(lam)


def n_of(lam: tuple[int, ...]) -> int:
    """n(lambda) = sum (i-1) lambda_i."""
    return sum(i * x for i, x in enumerate(lam))


def multiplicities(lam: tuple[int, ...]) -> dict[int, int]:
    return dict(Counter(lam))


def weight_n_mult(lam):
    return weight(lam), n_of(lam), multiplicities(lam)


def conj_dot(lam, nu) -> int:
    """sum_i lam'_i nu'_i, which equals sum_{i,j} min(lam_i, nu_j)."""
    return sum(a * b for a, b in zip(conjugate(lam), conjugate(nu)))


def contains(lam, mu) -> bool:
    """True when mu is a subdiagram of lam."""
    return len(mu) <= len(lam) and all(m <= l for m, l in zip(mu, lam))


def double_interleave(lam):
    return tuple(x for x in lam for _ in range(2))


def halve_doubled(mu):
    if len(mu) % 2 or any(mu[i] != mu[i + 1] for i in range(0, len(mu), 2)):
        raise NotDoubled(f"{mu} has an odd multiplicity")
    return tuple(mu[::2])


def skew_n(lam, mu) -> int:
    """n(lam/mu) = sum_i C(lam'_i - mu'_i, 2)."""
    lc, mc = conjugate(lam), conjugate(mu)
    mc = mc + (0,) * (len(lc) - len(mc))
    return sum(comb(a - b, 2) for a, b in zip(lc, mc))


def is_horizontal_strip(lam, mu) -> bool:
    """mu subset lam with interlacing lam_1 >= mu_1 >= lam_2 >= mu_2 >= ..."""
    if len(mu) > len(lam) or len(lam) > len(mu) + 1:
        return False
    for i, m in enumerate(mu):
        if m > lam[i]:
            return False
        if i + 1 < len(lam) and lam[i + 1] > m:
            return False
    return True


def horizontal_strips_below(lam):
    """All mu with lam/mu a horizontal strip, i.e. lam_{i+1} <= mu_i <= lam_i."""
    ell = len(lam)
    ranges = [range(lam[i + 1] if i + 1 < ell else 0, lam[i] + 1) for i in range(ell)]

    def rec(i, acc):
        if i == ell:
            yield make(acc)
            return
        for m in ranges[i]:
            yield from rec(i + 1, acc + [m])

    yield from rec(0, [])


def of_weight(n: int, max_part: int | None = None, max_length: int | None = None) -> Iterator[tuple]:
    """Partitions of n, lexicographically decreasing."""
    if max_part is None:
        max_part = n
    if max_length is None:
        max_length = n

    def rec(rem, cap, slots):
        if rem == 0:
            yield ()
            return
        if slots == 0:
            return
        for first in range(min(rem, cap), 0, -1):
            if first * slots < rem:
                break
            for rest in rec(rem - first, first, slots - 1):
                yield (first,) + rest

    yield from rec(n, max_part, max_length)


def iterate(max_weight: int | None = None, max_part: int | None = None,
            max_length: int | None = None) -> Iterator[tuple]:
    """Graded lexicographic stream: weight ascending, lex descending within a weight."""
    if max_weight is None:
        if max_part is None or max_length is None:
            raise ValueError("iteration needs a weight bound or both part and length bounds")
        max_weight = max_part * max_length
    for w in range(max_weight + 1):
        yield from of_weight(w, max_part, max_length)


def subpartitions(lam):
    """All mu contained in lam."""
    def rec(i, cap):
        if i == len(lam):
            yield ()
            return
        yield ()
        for m in range(1, min(cap, lam[i]) + 1):
            for rest in rec(i + 1, m):
                yield (m,) + rest

    yield from rec(0, lam[0] if lam else 0)


def to_text(lam) -> str:
    return ",".join(str(x) for x in lam)
