"""Degree sequences by restriction to a random line over a prime field.

This is an independent, probabilistic route to ``deg f^n``.  A projective map
restricted to a generic line ``z = a*t + b`` becomes a tuple of univariate
polynomials; its degree after removing their common factor equals the degree
of the map, because a generic line misses the indeterminacy set.  Iterating
``f`` on that tuple only needs univariate arithmetic modulo a prime, which is
cheap even when the exact iterates have hundreds of thousands of terms.

The answer is wrong only if the random line or the prime is unlucky, which
happens with probability about ``deg / p`` per step.  It is used to
cross-check the exact route, never to replace it.
"""

from __future__ import annotations

import random
from typing import Sequence

from .maps import ProjectiveMap

__all__ = ["PRIME", "line_degree_sequence", "affine_line_lower_bounds"]

PRIME = (1 << 61) - 1

Upoly = list  # coefficients mod PRIME, lowest degree first, no trailing zeros


def _trim(a: Upoly) -> Upoly:
    while a and a[-1] == 0:
        a.pop()
    return a


_KRONECKER_MIN = 24


def _mul(a: Upoly, b: Upoly, p: int) -> Upoly:
    if not a or not b:
        return []
    if min(len(a), len(b)) < _KRONECKER_MIN:
        out = [0] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    out[i + j] += x * y
        return _trim([c % p for c in out])
    # Kronecker substitution: pack into one big integer, multiply, unpack
    bits = 2 * p.bit_length() + max(len(a), len(b)).bit_length() + 1
    nbytes = (bits + 7) // 8
    A = int.from_bytes(b"".join(x.to_bytes(nbytes, "little") for x in a), "little")
    B = int.from_bytes(b"".join(x.to_bytes(nbytes, "little") for x in b), "little")
    raw = (A * B).to_bytes(nbytes * (len(a) + len(b)), "little")
    return _trim([int.from_bytes(raw[i : i + nbytes], "little") % p for i in range(0, len(raw), nbytes)])


def _add_scaled(acc: Upoly, a: Upoly, c: int, p: int) -> Upoly:
    if len(acc) < len(a):
        acc.extend([0] * (len(a) - len(acc)))
    for i, x in enumerate(a):
        acc[i] = (acc[i] + c * x) % p
    return acc


def _divmod(a: Upoly, b: Upoly, p: int) -> tuple[Upoly, Upoly]:
    a = list(a)
    inv = pow(b[-1], p - 2, p)
    q = [0] * max(0, len(a) - len(b) + 1)
    db = len(b) - 1
    for i in range(len(a) - 1, db - 1, -1):
        c = a[i] * inv % p
        if c:
            q[i - db] = c
            for j, y in enumerate(b):
                a[i - db + j] = (a[i - db + j] - c * y) % p
    return _trim(q), _trim(a[:db])


def _gcd(a: Upoly, b: Upoly, p: int) -> Upoly:
    while b:
        a, b = b, _divmod(a, b, p)[1]
    return a


def _evaluate(poly, images: Sequence[Upoly], p: int, cache: dict) -> Upoly:
    acc: Upoly = []
    for mono, c in poly.terms.items():
        term = [int(c) % p]
        for v, e in enumerate(mono):
            if e:
                key = (v, e)
                if key not in cache:
                    base = images[v]
                    pw = [1]
                    for _ in range(e):
                        pw = _mul(pw, base, p)
                    cache[key] = pw
                term = _mul(term, cache[key], p)
        _add_scaled(acc, term, 1, p)
    return _trim(acc)


def line_degree_sequence(m: ProjectiveMap, N: int, seed: int = 0, p: int = PRIME) -> tuple[int, ...]:
    """``deg m^1, ..., deg m^N`` computed on a random line modulo ``p``."""
    if any(c.denominator_lcm() != 1 for c in m.components):
        raise ValueError("components must have integer coefficients")
    rng = random.Random(seed)
    cur = [_trim([rng.randrange(p), rng.randrange(1, p)]) for _ in range(m.nvars)]
    out = []
    for _ in range(N):
        cache: dict = {}
        cur = [_evaluate(c, cur, p, cache) for c in m.components]
        g: Upoly = []
        for c in cur:
            g = _gcd(c, g, p) if g else list(c)
            if len(g) == 1:
                break
        if len(g) > 1:
            cur = [_divmod(c, g, p)[0] if c else [] for c in cur]
        out.append(max(len(c) - 1 for c in cur if c))
    return tuple(out)


def affine_line_lower_bounds(m: ProjectiveMap, N: int, seed: int = 0, p: int = PRIME) -> tuple[int, ...]:
    """Certified lower bounds for ``deg m^1, ..., deg m^N`` of a polynomial map.

    ``m`` must be the homogenization of a polynomial map, i.e. its last
    component is ``c * z_k^D``.  The affine components are restricted to a
    random affine line and reduced modulo ``p``.  Both steps can only lower a
    degree, so every entry is a true lower bound whatever the random choices;
    for a generic line and prime it is the exact degree.
    """
    last = m.components[-1]
    k = m.nvars - 1
    if not last.is_monomial() or any(e for e in next(iter(last.terms))[:k]):
        raise ValueError("not the homogenization of a polynomial map")
    if any(c.denominator_lcm() != 1 for c in m.components):
        raise ValueError("components must have integer coefficients")
    scale = pow(int(next(iter(last.terms.values()))) % p, p - 2, p)
    rng = random.Random(seed)
    cur = [_trim([rng.randrange(p), rng.randrange(1, p)]) for _ in range(k)] + [[1]]
    out = []
    for _ in range(N):
        cache: dict = {}
        aff = [_evaluate(c, cur, p, cache) for c in m.components[:k]]
        cur = [_trim([x * scale % p for x in c]) for c in aff] + [[1]]
        out.append(max((len(c) - 1 for c in cur[:k] if c), default=0))
    return tuple(out)
