"""Finitely supported multiplicity vectors.

The recursion bookkeeping lives in sequences of non-negative integer
multiplicities indexed by tangency order: a vector assigns to each order
i >= 1 the number of contact points of that order.  Vectors are stored in
canonical form as tuples of (index, mult) pairs with strictly increasing
indices and every stored mult >= 1.  Canonical tuples are hashable and go
straight into memo keys, so every operation here returns canonical form.
"""

from __future__ import annotations

import math
import re
from itertools import product

# canonical form: ((i1, m1), (i2, m2), ...), i1 < i2 < ..., all m >= 1
MV = tuple

ZERO: MV = ()

_ENTRY_RE = re.compile(r"^(\d+):(\d+)$")


def e(i: int, m: int = 1) -> MV:
    """The vector m * e_i."""
    if i < 1 or m < 0:
        raise ValueError(f"bad term {m}*e_{i}")
    return ((i, m),) if m else ()


def from_pairs(pairs) -> MV:
    acc = {}
    for i, m in pairs:
        if i < 1 or m < 0:
            raise ValueError(f"bad entry ({i}, {m})")
        acc[i] = acc.get(i, 0) + m
    return tuple(sorted((i, m) for i, m in acc.items() if m))


def get(v: MV, i: int) -> int:
    for j, m in v:
        if j == i:
            return m
    return 0


def norm(v: MV) -> int:
    """Total number of points: sum of multiplicities."""
    return sum(m for _, m in v)


def iweight(v: MV) -> int:
    """Total intersection weight: sum of i * m_i."""
    return sum(i * m for i, m in v)


def ipow(v: MV) -> int:
    """Product of i^m_i."""
    out = 1
    for i, m in v:
        out *= i**m
    return out


def fact(v: MV) -> int:
    """Product of m_i!."""
    out = 1
    for _, m in v:
        out *= math.factorial(m)
    return out


def stats(v: MV) -> tuple[int, int, int, int]:
    """(norm, iweight, ipow, fact) of a vector, all exact."""
    return norm(v), iweight(v), ipow(v), fact(v)


def add(u: MV, v: MV) -> MV:
    if not u:
        return v
    if not v:
        return u
    acc = dict(u)
    for i, m in v:
        acc[i] = acc.get(i, 0) + m
    return tuple(sorted(acc.items()))


def sub(u: MV, v: MV) -> MV:
    """u - v; raises ValueError unless v <= u componentwise."""
    if not v:
        return u
    acc = dict(u)
    for i, m in v:
        r = acc.get(i, 0) - m
        if r < 0:
            raise ValueError(f"{v} not <= {u}")
        if r:
            acc[i] = r
        else:
            acc.pop(i, None)
    return tuple(sorted(acc.items()))


def scale(v: MV, k: int) -> MV:
    """k * v (multiplies every multiplicity by k)."""
    if k < 0:
        raise ValueError("negative scale")
    return tuple((i, k * m) for i, m in v) if k else ()


def leq(u: MV, v: MV) -> bool:
    """Componentwise u <= v."""
    pool = dict(v)
    return all(m <= pool.get(i, 0) for i, m in u)


def support(v: MV) -> tuple:
    return tuple(i for i, _ in v)


def is_odd_support(v: MV) -> bool:
    return all(i % 2 == 1 for i, _ in v)


def is_even_support(v: MV) -> bool:
    return all(i % 2 == 0 for i, _ in v)


def is_odd_even_support(v: MV) -> bool:
    """Support contained in {2, 6, 10, ...}, the indices == 2 mod 4."""
    return all(i % 4 == 2 for i, _ in v)


def parity_class(v: MV) -> str:
    """Classify the support into the subsemigroup it spans.

    Indices == 2 mod 4 belong to both the even and the odd*even span; the
    most specific class is reported.  The zero vector lies in every span and
    is reported as odd_even_support.
    """
    if not v or is_odd_even_support(v):
        return "odd_even_support"
    if is_odd_support(v):
        return "odd_support"
    if is_even_support(v):
        return "even_support"
    return "mixed"


def subvectors(v: MV):
    """All u with 0 <= u <= v, in a deterministic order."""
    if not v:
        yield ZERO
        return
    idx = [i for i, _ in v]
    for mults in product(*(range(m + 1) for _, m in v)):
        yield tuple((i, m) for i, m in zip(idx, mults) if m)


def multinomial(top: MV, parts) -> int:
    """The vector multinomial top! / (p1! ... pk! (top - sum pi)!).

    The leftover factor (top - sum of parts) is part of the convention;
    parts exceeding top raise ValueError.
    """
    total = ZERO
    for p in parts:
        total = add(total, p)
    if not leq(total, top):
        raise ValueError("parts exceed top")
    out = fact(top)
    for p in parts:
        out //= fact(p)
    out //= fact(sub(top, total))
    return out


def binom_vec(b: MV, g: MV) -> int:
    """Componentwise product of binomials C(b_i, g_i); 0 if g exceeds b."""
    if not leq(g, b):
        return 0
    pool = dict(b)
    out = 1
    for i, m in g:
        out *= math.comb(pool.get(i, 0), m)
    return out


def format_mv(v: MV) -> str:
    """Text form "i1:m1,i2:m2" with increasing indices; zero vector is "0"."""
    if not v:
        return "0"
    return ",".join(f"{i}:{m}" for i, m in v)


def parse_mv(s: str) -> MV:
    s = s.strip()
    if s == "0":
        return ZERO
    pairs = []
    last = 0
    for chunk in s.split(","):
        m = _ENTRY_RE.match(chunk.strip())
        if not m:
            raise ValueError(f"bad vector entry {chunk!r}")
        i, mult = int(m.group(1)), int(m.group(2))
        if i <= last or mult < 1:
            raise ValueError(f"non-canonical vector text {s!r}")
        pairs.append((i, mult))
        last = i
    return tuple(pairs)
