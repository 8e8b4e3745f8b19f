"""Compiled kernel for large sparse integer polynomial products.

Monomials are encoded as mixed-radix ``int64`` keys, so multiplying monomials
is adding keys.  The product is formed by a heap merge over the rows
``a_i * b`` (Johnson's algorithm), which emits output keys in increasing order
and needs no hash table.  Coefficients are carried as residues modulo several
primes below ``2^31`` and rebuilt by the Chinese remainder theorem; enough
primes are used that the symmetric range covers the a-priori bound
``max|a| * max|b| * min(len a, len b)``, so the result is exact.
"""

from __future__ import annotations

import numpy as np
from numba import njit

__all__ = ["sparse_mul", "primes_below_2_31"]


def _is_prime(n: int) -> bool:
    # deterministic Miller-Rabin for n < 3.4e9
    if n < 2:
        return False
    for p in (2, 3, 5, 7):
        if n % p == 0:
            return n == p
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in (2, 7, 61):
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


_PRIMES: list[int] = []


def primes_below_2_31(count: int) -> list[int]:
    """The ``count`` largest primes below ``2^31``."""
    n = (1 << 31) - 1 if not _PRIMES else _PRIMES[-1] - 2
    while len(_PRIMES) < count:
        if _is_prime(n):
            _PRIMES.append(n)
        n -= 2
    return _PRIMES[:count]


@njit(cache=True)
def _sift_down(hk, hi, size, pos):
    key = hk[pos]
    idx = hi[pos]
    while True:
        child = 2 * pos + 1
        if child >= size:
            break
        if child + 1 < size and hk[child + 1] < hk[child]:
            child += 1
        if hk[child] >= key:
            break
        hk[pos] = hk[child]
        hi[pos] = hi[child]
        pos = child
    hk[pos] = key
    hi[pos] = idx


@njit(cache=True)
def _heap_mul(ka, ra, kb, rb, primes):
    """Product of ``sum ra[:, i] x^ka[i]`` and ``sum rb[:, j] x^kb[j]`` residue-wise.

    ``kb`` must be sorted increasingly.  Returns output keys and residues.
    """
    n = ka.shape[0]
    m = kb.shape[0]
    r = primes.shape[0]
    hk = np.empty(n, np.int64)
    hi = np.empty(n, np.int64)
    ptr = np.zeros(n, np.int64)
    # heapify rows by their first key
    for i in range(n):
        hk[i] = ka[i] + kb[0]
        hi[i] = i
    for pos in range(n // 2 - 1, -1, -1):
        _sift_down(hk, hi, n, pos)
    size = n
    cap = max(16, n + m)
    ok = np.empty(cap, np.int64)
    orr = np.empty((r, cap), np.int64)
    acc = np.zeros(r, np.int64)
    cnt = 0
    while size > 0:
        key = hk[0]
        for t in range(r):
            acc[t] = 0
        while size > 0 and hk[0] == key:
            i = hi[0]
            j = ptr[i]
            for t in range(r):
                acc[t] = (acc[t] + ra[t, i] * rb[t, j]) % primes[t]
            j += 1
            ptr[i] = j
            if j < m:
                hk[0] = ka[i] + kb[j]
            else:
                size -= 1
                hk[0] = hk[size]
                hi[0] = hi[size]
            if size > 0:
                _sift_down(hk, hi, size, 0)
        nz = False
        for t in range(r):
            if acc[t] != 0:
                nz = True
        if nz:
            if cnt == cap:
                cap *= 2
                ok2 = np.empty(cap, np.int64)
                ok2[:cnt] = ok[:cnt]
                ok = ok2
                orr2 = np.empty((r, cap), np.int64)
                orr2[:, :cnt] = orr[:, :cnt]
                orr = orr2
            ok[cnt] = key
            for t in range(r):
                orr[t, cnt] = acc[t]
            cnt += 1
    return ok[:cnt], orr[:, :cnt]


_KEY_LIMIT = 1 << 62


def sparse_mul(a_terms: dict, b_terms: dict, nvars: int) -> dict | None:
    """Product of two integer-coefficient term dicts, or ``None`` if the encoding does not fit."""
    if len(a_terms) > len(b_terms):
        a_terms, b_terms = b_terms, a_terms
    ea = np.array(list(a_terms), dtype=np.int64).reshape(len(a_terms), nvars)
    eb = np.array(list(b_terms), dtype=np.int64).reshape(len(b_terms), nvars)
    bounds = ea.max(axis=0) + eb.max(axis=0) + 1
    weights = np.ones(nvars, dtype=object)
    total = 1
    for v in range(nvars - 1, -1, -1):
        weights[v] = total
        total *= int(bounds[v])
    if total >= _KEY_LIMIT:
        return None
    w = weights.astype(np.int64)
    ka = ea @ w
    kb = eb @ w
    ca = list(a_terms.values())
    cb = list(b_terms.values())
    bound = max(map(abs, ca)) * max(map(abs, cb)) * len(ca)
    primes = []
    modulus = 1
    count = 1
    while True:
        primes = primes_below_2_31(count)
        modulus = 1
        for p in primes:
            modulus *= p
        if modulus > 2 * bound:
            break
        count += 1
    order = np.argsort(kb, kind="stable")
    kb = kb[order]
    ra = np.array([[c % p for c in ca] for p in primes], dtype=np.int64)
    rb = np.array([[c % p for c in cb] for p in primes], dtype=np.int64)[:, order]
    pr = np.array(primes, dtype=np.int64)
    keys, res = _heap_mul(ka, ra, kb, rb, pr)
    coeffs = _crt(res, primes, modulus)
    # decode keys back to exponent tuples
    exps = np.empty((keys.shape[0], nvars), dtype=np.int64)
    rem = keys.copy()
    for v in range(nvars):
        exps[:, v] = rem // w[v]
        rem = rem % w[v]
    return dict(zip(map(tuple, exps.tolist()), coeffs))


def _crt(res: np.ndarray, primes: list[int], modulus: int) -> list[int]:
    half = modulus // 2
    if len(primes) == 1:
        p = primes[0]
        return [c - p if c > half else c for c in res[0].tolist()]
    basis = []
    for p in primes:
        mp = modulus // p
        basis.append(mp * pow(mp, -1, p))
    rows = [r.tolist() for r in res]
    out = []
    for vals in zip(*rows):
        c = sum(b * v for b, v in zip(basis, vals)) % modulus
        out.append(c - modulus if c > half else c)
    return out
