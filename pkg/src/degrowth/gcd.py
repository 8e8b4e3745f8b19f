"""Multivariate polynomial GCD over the rationals.

The general routine is recursive: pick a main variable, split off the content
(the GCD of the coefficients, computed recursively in fewer variables) and run
a subresultant remainder sequence on the primitive parts.  Several cheap
reductions run first:

* common monomial factors are removed and handled exactly;
* if one argument divides the other it is the answer;
* a variable present in only one argument reduces to a content computation;
* two homogeneous arguments are dehomogenized, saving a variable;
* a heuristic GCD evaluates variables at large integers, takes the integer
  GCD and reads the answer back from its balanced base-xi digits.  The
  candidate is accepted only after exact trial division, so a failed guess
  merely falls through to the remainder sequence.

Results are normalized: integer coefficients with content 1 and a positive
leading coefficient in graded lexicographic order.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd as igcd, isqrt
from typing import Sequence

from .poly import Poly, PolyError, coefficients_in, divide_exact, from_coefficients

__all__ = ["gcd", "gcd_list", "content_and_primitive", "lcm"]


def gcd(a: Poly, b: Poly) -> Poly:
    a._check(b)
    if a.is_zero():
        return b.normalized()
    if b.is_zero():
        return a.normalized()
    return _gcd(a.normalized(), b.normalized()).normalized()


def lcm(a: Poly, b: Poly) -> Poly:
    if a.is_zero() or b.is_zero():
        return Poly.zero(a.nvars)
    g = gcd(a, b)
    return (_exact(a.normalized(), g) * b.normalized()).normalized()


def gcd_list(polys: Sequence[Poly]) -> Poly:
    """GCD of several polynomials.

    With three or more nonzero inputs the smallest one is paired with a fixed
    integer combination of the rest; the candidate is accepted only if it
    divides every input, otherwise the pairwise fold is used.
    """
    if not polys:
        raise PolyError("gcd of an empty list")
    nvars = polys[0].nvars
    nz = [p.normalized() for p in polys if not p.is_zero()]
    if not nz:
        return Poly.zero(nvars)
    nz = sorted(set(nz), key=lambda p: (len(p.terms), p.total_degree()))
    if len(nz) == 1:
        return nz[0]
    if len(nz) == 2:
        return gcd(nz[0], nz[1])
    low = list(nz[0].monomial_content())
    for p in nz[1:]:
        for i, e in enumerate(p.monomial_content()):
            low[i] = min(low[i], e)
    mono = tuple(low)
    nz = [p.unshift(mono) for p in nz]
    if any(p.is_constant() for p in nz):
        return Poly.monomial(mono)
    first, rest = nz[0], nz[1:]
    combo = rest[0]
    for i, p in enumerate(rest[1:], start=2):
        combo = combo + p.scale(i)
    cand = gcd(first, combo) if not combo.is_zero() else first
    if all(divide_exact(p, cand) is not None for p in rest):
        return cand.shift(mono)
    g = first
    for p in rest:
        g = gcd(g, p)
        if g.is_constant():
            break
    return g.shift(mono)


def content_and_primitive(p: Poly, main_var: int) -> tuple[Poly, Poly]:
    """Split ``p`` into its content with respect to ``z_main_var`` and the primitive part.

    The content is the GCD of the coefficients of ``p`` viewed as a univariate
    polynomial in ``z_main_var``; ``p == content * primitive`` holds exactly.
    """
    if p.is_zero():
        raise PolyError("content of the zero polynomial")
    coeffs = coefficients_in(p, main_var)
    cont = gcd_list(list(coeffs.values()))
    # keep the overall scalar on the content so the product reproduces p
    prim = {e: _exact(c, cont) for e, c in coeffs.items()}
    prim_poly = from_coefficients(prim, main_var, p.nvars)
    lc = prim_poly.leading_coefficient()
    scalar = prim_poly.integer_content()
    if lc < 0:
        scalar = -scalar
    return cont.scale(scalar), prim_poly.scale(1 / Fraction(scalar))


def _exact(a: Poly, b: Poly) -> Poly:
    q = divide_exact(a, b)
    if q is None:
        raise ArithmeticError(f"inexact division of {a} by {b}")
    return q


def _gcd(a: Poly, b: Poly) -> Poly:
    """GCD of two nonzero polynomials, up to a rational unit."""
    mono = tuple(min(x, y) for x, y in zip(a.monomial_content(), b.monomial_content()))
    a = a.unshift(a.monomial_content())
    b = b.unshift(b.monomial_content())
    if a.is_constant() or b.is_constant():
        return Poly.monomial(mono)
    if a == b or a == -b:
        return a.shift(mono)
    small, big = (a, b) if len(a.terms) <= len(b.terms) else (b, a)
    if divide_exact(big, small) is not None:
        return small.shift(mono)
    if a.nvars >= 2 and a.is_homogeneous() and b.is_homogeneous():
        return _gcd_homogeneous(a, b).shift(mono)
    va, vb = a.variables(), b.variables()
    lone = sorted(va ^ vb)
    if lone:
        v = lone[0]
        if v in va:
            a = content_and_primitive(a, v)[0]
        else:
            b = content_and_primitive(b, v)[0]
        return _gcd(a, b).shift(mono)
    h = _heuristic_gcd(a.normalized(), b.normalized())
    if h is not None:
        return h.shift(mono)
    v = min(sorted(va), key=lambda i: max(a.degree_in(i), b.degree_in(i)))
    ca, pa = content_and_primitive(a, v)
    cb, pb = content_and_primitive(b, v)
    c = _gcd(ca, cb)
    h = _subresultant_last(_dense(pa, v), _dense(pb, v))
    if len(h) == 1:
        return c.shift(mono)
    hp = from_coefficients({i: x for i, x in enumerate(h) if not x.is_zero()}, v, a.nvars)
    hp = content_and_primitive(hp, v)[1]
    return (c * hp).shift(mono)


def _gcd_homogeneous(a: Poly, b: Poly) -> Poly:
    # a, b homogeneous and free of monomial factors: the GCD lives in any affine chart
    nv = a.nvars
    w = max(range(nv), key=lambda i: (max(a.degree_in(i), b.degree_in(i)), -i))
    h = _gcd(a.dehomogenize(w), b.dehomogenize(w))
    return h.homogenize_at(w, h.total_degree())


# -- subresultant remainder sequence over a polynomial coefficient ring ----------


def _dense(p: Poly, v: int) -> list[Poly]:
    co = coefficients_in(p, v)
    zero = Poly.zero(p.nvars)
    return [co.get(i, zero) for i in range(max(co) + 1)]


def _strip(f: list[Poly]) -> list[Poly]:
    while f and f[-1].is_zero():
        f.pop()
    return f


def _prem(f: list[Poly], g: list[Poly]) -> list[Poly]:
    """Pseudo-remainder ``lc(g)^(deg f - deg g + 1) * f mod g``."""
    df, dg = len(f) - 1, len(g) - 1
    if df < dg:
        return list(f)
    r = list(f)
    lc = g[-1]
    n = df - dg + 1
    while r and len(r) - 1 >= dg:
        j = len(r) - 1 - dg
        lr = r[-1]
        r = [c * lc for c in r]
        for i, gc in enumerate(g):
            if not gc.is_zero():
                r[i + j] = r[i + j] - lr * gc
        _strip(r)
        n -= 1
    if n and r:
        factor = lc**n
        r = [c * factor for c in r]
    return r


def _subresultant_last(f: list[Poly], g: list[Poly]) -> list[Poly]:
    """Last nonzero member of the subresultant remainder sequence of ``f`` and ``g``."""
    if len(f) < len(g):
        f, g = g, f
    n, m = len(f) - 1, len(g) - 1
    last = g
    d = n - m
    h = _prem(f, g)
    if (d + 1) % 2:
        h = [-x for x in h]
    lc = g[-1]
    c = -(lc**d)
    while h:
        k = len(h) - 1
        last = h
        f, g, m, d = g, h, k, m - k
        b = -(lc * c**d)
        h = [_exact(x, b) for x in _prem(f, g)]
        lc = g[-1]
        if d > 1:
            c = _exact((-lc) ** d, c ** (d - 1))
        else:
            c = -lc
    return last


# -- heuristic GCD ---------------------------------------------------------------

_HEU_ATTEMPTS = 6


def _max_norm(p: Poly) -> int:
    return max(abs(c) for c in p.terms.values())


def _eval_last(p: Poly, v: int, xi: int) -> Poly:
    """Substitute the integer ``xi`` for ``z_v``; the result keeps ``nvars`` with ``z_v`` absent."""
    out: dict = {}
    pw = {0: 1}
    for m, c in p.terms.items():
        e = m[v]
        if e not in pw:
            pw[e] = xi**e
        mm = m[:v] + (0,) + m[v + 1 :]
        out[mm] = out.get(mm, 0) + c * pw[e]
    return Poly._raw(p.nvars, {m: c for m, c in out.items() if c})


def _interpolate(h: Poly, v: int, xi: int) -> Poly:
    """Read coefficients as balanced base-``xi`` numbers; digit ``i`` becomes the ``z_v^i`` coefficient."""
    out: dict = {}
    half = xi // 2
    for m, c in h.terms.items():
        i = 0
        while c:
            d = c % xi
            if d > half:
                d -= xi
            if d:
                out[m[:v] + (i,) + m[v + 1 :]] = d
            c = (c - d) // xi
            i += 1
    return Poly._raw(h.nvars, out)


def _heuristic_gcd(f: Poly, g: Poly) -> Poly | None:
    """Integer-evaluation GCD of integer polynomials, or ``None`` when it gives up.

    The result carries the integer GCD of the contents of ``f`` and ``g``;
    the recursion needs it to read digits back correctly.
    """
    cf, cg = f.integer_content(), g.integer_content()
    scale = igcd(cf, cg)
    if not (f.variables() | g.variables()):
        return Poly.constant(f.nvars, scale)
    h = _heuristic_primitive(f.scale(Fraction(1, cf)), g.scale(Fraction(1, cg)))
    return None if h is None else h.scale(scale)


def _heuristic_primitive(f: Poly, g: Poly) -> Poly | None:
    used = sorted(f.variables() | g.variables())
    v = used[-1]
    fn, gn = _max_norm(f), _max_norm(g)
    bound = 2 * min(fn, gn) + 29
    xi = max(
        min(bound, 99 * isqrt(bound)),
        2 * min(fn // abs(f.leading_coefficient()), gn // abs(g.leading_coefficient())) + 2,
    )
    for _ in range(_HEU_ATTEMPTS):
        fe, ge = _eval_last(f, v, xi), _eval_last(g, v, xi)
        if not fe.is_zero() and not ge.is_zero():
            he = _heuristic_gcd(fe, ge)
            if he is not None:
                cand = _interpolate(he, v, xi)
                if not cand.is_zero():
                    cand = cand.normalized()
                    if divide_exact(f, cand) is not None and divide_exact(g, cand) is not None:
                        return cand
                # the cofactor images give two more candidates
                for src, other in ((fe, g), (ge, f)):
                    cof_img = divide_exact(src, he)
                    if cof_img is None:
                        continue
                    cof = _interpolate(cof_img, v, xi)
                    if cof.is_zero():
                        continue
                    base = f if src is fe else g
                    cand = divide_exact(base, cof)
                    if cand is not None and not cand.is_zero():
                        cand = cand.normalized()
                        if divide_exact(other, cand) is not None:
                            return cand
        xi = xi * 73794 * isqrt(isqrt(xi)) // 27011
    return None


