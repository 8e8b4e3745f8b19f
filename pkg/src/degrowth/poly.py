"""Sparse multivariate polynomials with exact rational coefficients.

A :class:`Poly` is a map from exponent tuples to nonzero coefficients.
Coefficients are Python ``int`` whenever they are integral and
:class:`fractions.Fraction` otherwise, so integer-only work (the common case
after normalization) never pays for rational arithmetic.

Terms are iterated in graded lexicographic order, highest first: total degree,
then lexicographic comparison of the exponent tuples with ``z0`` largest.
"""

from __future__ import annotations

import heapq
from fractions import Fraction
from math import gcd as igcd
from numbers import Rational
from typing import Iterable, Sequence

Monomial = tuple[int, ...]


class _NegInfinity:
    """Degree of the zero polynomial.

    Compares below every integer but supports no arithmetic, so accidentally
    adding to it fails loudly.
    """

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __lt__(self, other):
        return other is not self

    def __le__(self, other):
        return True

    def __gt__(self, other):
        return False

    def __ge__(self, other):
        return other is self

    def __eq__(self, other):
        return other is self

    def __hash__(self):
        return hash("NEG_INFINITY")

    def __repr__(self):
        return "NEG_INFINITY"


NEG_INFINITY = _NegInfinity()


class PolyError(ValueError):
    pass


def as_rat(c) -> int | Fraction:
    """Coerce ``c`` to the canonical coefficient type (``int`` or reduced ``Fraction``)."""
    if isinstance(c, bool):
        raise TypeError("booleans are not coefficients")
    if isinstance(c, int):
        return c
    if isinstance(c, Fraction):
        return c.numerator if c.denominator == 1 else c
    if isinstance(c, Rational):
        return as_rat(Fraction(c.numerator, c.denominator))
    if isinstance(c, str):
        return as_rat(Fraction(c))
    raise TypeError(f"inexact coefficient {c!r}; only rationals are allowed")


def _grlex_key(m: Monomial):
    return (sum(m), m)


class Poly:
    """Immutable sparse polynomial in ``nvars`` variables ``z0 .. z{nvars-1}``."""

    __slots__ = ("nvars", "terms", "_hash")

    def __init__(self, nvars: int, terms: dict | None = None):
        if nvars < 0:
            raise PolyError("negative variable count")
        clean = {}
        for mono, c in (terms or {}).items():
            mono = tuple(mono)
            if len(mono) != nvars or any(e < 0 for e in mono):
                raise PolyError(f"bad monomial {mono} for {nvars} variables")
            c = as_rat(c)
            if c:
                clean[mono] = clean.get(mono, 0) + c
                if not clean[mono]:
                    del clean[mono]
        self.nvars = nvars
        self.terms = {m: as_rat(c) for m, c in clean.items()}
        self._hash = None

    @classmethod
    def _raw(cls, nvars: int, terms: dict) -> Poly:
        # trusted constructor: no zero coefficients, canonical coefficient types
        p = object.__new__(cls)
        p.nvars = nvars
        p.terms = terms
        p._hash = None
        return p

    # -- constructors -----------------------------------------------------

    @classmethod
    def zero(cls, nvars: int) -> Poly:
        return cls._raw(nvars, {})

    @classmethod
    def constant(cls, nvars: int, c) -> Poly:
        c = as_rat(c)
        return cls._raw(nvars, {(0,) * nvars: c} if c else {})

    @classmethod
    def one(cls, nvars: int) -> Poly:
        return cls.constant(nvars, 1)

    @classmethod
    def var(cls, nvars: int, i: int, power: int = 1) -> Poly:
        if not 0 <= i < nvars:
            raise PolyError(f"variable z{i} out of range for {nvars} variables")
        e = [0] * nvars
        e[i] = power
        return cls._raw(nvars, {tuple(e): 1})

    @classmethod
    def monomial(cls, exps: Sequence[int], c=1) -> Poly:
        return cls(len(exps), {tuple(exps): c})

    @classmethod
    def gens(cls, nvars: int) -> list[Poly]:
        return [cls.var(nvars, i) for i in range(nvars)]

    # -- inspection -------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def is_constant(self) -> bool:
        return not self.terms or (len(self.terms) == 1 and not any(next(iter(self.terms))))

    def is_monomial(self) -> bool:
        return len(self.terms) == 1

    def constant_value(self):
        return self.terms.get((0,) * self.nvars, 0)

    def total_degree(self):
        if not self.terms:
            return NEG_INFINITY
        return max(sum(m) for m in self.terms)

    def degree_in(self, v: int):
        if not self.terms:
            return NEG_INFINITY
        return max(m[v] for m in self.terms)

    def min_degree_in(self, v: int) -> int:
        return min(m[v] for m in self.terms)

    def variables(self) -> set[int]:
        used = set()
        for m in self.terms:
            used.update(i for i, e in enumerate(m) if e)
        return used

    def is_homogeneous(self) -> bool:
        return len({sum(m) for m in self.terms}) <= 1

    def sorted_terms(self) -> list[tuple[Monomial, int | Fraction]]:
        return sorted(self.terms.items(), key=lambda t: _grlex_key(t[0]), reverse=True)

    def leading_monomial(self) -> Monomial:
        if not self.terms:
            raise PolyError("zero polynomial has no leading term")
        return max(self.terms, key=_grlex_key)

    def leading_coefficient(self):
        return self.terms[self.leading_monomial()]

    def monomial_content(self) -> Monomial:
        """Componentwise minimum exponent: the largest monomial dividing ``self``."""
        if not self.terms:
            return (0,) * self.nvars
        it = iter(self.terms)
        low = list(next(it))
        for m in it:
            for i, e in enumerate(m):
                if e < low[i]:
                    low[i] = e
        return tuple(low)

    # -- arithmetic -------------------------------------------------------

    def _check(self, other: Poly):
        if self.nvars != other.nvars:
            raise PolyError(f"variable-count mismatch: {self.nvars} vs {other.nvars}")

    def _coerce(self, other) -> Poly:
        if isinstance(other, Poly):
            self._check(other)
            return other
        return Poly.constant(self.nvars, other)

    def __add__(self, other) -> Poly:
        other = self._coerce(other)
        if len(other.terms) > len(self.terms):
            self, other = other, self
        out = dict(self.terms)
        for m, c in other.terms.items():
            s = out.get(m, 0) + c
            if s:
                out[m] = as_rat(s) if isinstance(s, Fraction) else s
            else:
                del out[m]
        return Poly._raw(self.nvars, out)

    __radd__ = __add__

    def __neg__(self) -> Poly:
        return Poly._raw(self.nvars, {m: -c for m, c in self.terms.items()})

    def __sub__(self, other) -> Poly:
        return self + (-self._coerce(other))

    def __rsub__(self, other) -> Poly:
        return self._coerce(other) - self

    def scale(self, c) -> Poly:
        c = as_rat(c)
        if not c:
            return Poly.zero(self.nvars)
        if c == 1:
            return self
        if isinstance(c, int) and all(isinstance(a, int) for a in self.terms.values()):
            return Poly._raw(self.nvars, {m: a * c for m, a in self.terms.items()})
        return Poly._raw(self.nvars, {m: as_rat(a * c) for m, a in self.terms.items()})

    def shift(self, mono: Monomial) -> Poly:
        """Multiply by the monomial with exponents ``mono``."""
        if not any(mono):
            return self
        return Poly._raw(
            self.nvars,
            {tuple(a + b for a, b in zip(m, mono)): c for m, c in self.terms.items()},
        )

    def unshift(self, mono: Monomial) -> Poly:
        """Divide by a monomial that is known to divide every term."""
        if not any(mono):
            return self
        return Poly._raw(
            self.nvars,
            {tuple(a - b for a, b in zip(m, mono)): c for m, c in self.terms.items()},
        )

    def __mul__(self, other) -> Poly:
        if not isinstance(other, Poly):
            return self.scale(other)
        self._check(other)
        if not self.terms or not other.terms:
            return Poly.zero(self.nvars)
        if len(self.terms) < len(other.terms):
            self, other = other, self
        if len(other.terms) == 1:
            (mono, c), = other.terms.items()
            return self.shift(mono).scale(c)
        return _mul_packed(self, other)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> Poly:
        if not isinstance(n, int) or n < 0:
            raise PolyError("exponent must be a non-negative integer")
        result = Poly.one(self.nvars)
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def __eq__(self, other) -> bool:
        if isinstance(other, Poly):
            return self.nvars == other.nvars and self.terms == other.terms
        if isinstance(other, (int, Fraction)):
            return self == Poly.constant(self.nvars, other)
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.nvars, frozenset(self.terms.items())))
        return self._hash

    def __bool__(self):
        return bool(self.terms)

    # -- evaluation / substitution ----------------------------------------

    def evaluate(self, point: Sequence) -> int | Fraction:
        if len(point) != self.nvars:
            raise PolyError(f"point has {len(point)} coordinates, expected {self.nvars}")
        pt = [as_rat(x) for x in point]
        total = 0
        for m, c in self.terms.items():
            t = c
            for x, e in zip(pt, m):
                if e:
                    t = t * x**e
            total += t
        return as_rat(total)

    def substitute(self, images: Sequence[Poly]) -> Poly:
        """Replace ``z_i`` by ``images[i]`` everywhere."""
        if len(images) != self.nvars:
            raise PolyError(f"need {self.nvars} images, got {len(images)}")
        if not images:
            return self
        target = images[0].nvars
        for im in images:
            if im.nvars != target:
                raise PolyError("images must share a variable count")
        if not self.terms:
            return Poly.zero(target)
        powers: list[dict[int, Poly]] = [{0: Poly.one(target), 1: im} for im in images]

        def power(i: int, e: int) -> Poly:
            cache = powers[i]
            if e not in cache:
                h = e // 2
                cache[e] = power(i, h) * power(i, e - h)
            return cache[e]

        # Horner-like sharing: group terms by the exponent of the first variable
        # would help dense inputs; the maps here are sparse, so plain expansion
        # with cached powers is enough.
        total: dict = {}
        for m, c in self.terms.items():
            t = None
            for i, e in enumerate(m):
                if e:
                    t = power(i, e) if t is None else t * power(i, e)
            if t is None:
                t = Poly.one(target)
            for mm, cc in t.terms.items():
                total[mm] = total.get(mm, 0) + c * cc
        return Poly._raw(target, {m: as_rat(c) for m, c in total.items() if c})

    def derivative(self, v: int) -> Poly:
        out = {}
        for m, c in self.terms.items():
            e = m[v]
            if e:
                mm = list(m)
                mm[v] = e - 1
                out[tuple(mm)] = c * e
        return Poly._raw(self.nvars, out)

    # -- projective charts ------------------------------------------------

    def homogenize(self, target_degree: int) -> Poly:
        """Homogenize to ``target_degree`` with a new last variable."""
        deg = self.total_degree()
        if deg is not NEG_INFINITY and target_degree < deg:
            raise PolyError(f"target degree {target_degree} below degree {deg}")
        return Poly._raw(
            self.nvars + 1,
            {m + (target_degree - sum(m),): c for m, c in self.terms.items()},
        )

    def dehomogenize(self, chart_var: int | None = None) -> Poly:
        """Set ``z_chart_var`` (default: the last variable) to 1 and drop it."""
        if self.nvars < 1:
            raise PolyError("nothing to dehomogenize")
        v = self.nvars - 1 if chart_var is None else chart_var
        out: dict = {}
        for m, c in self.terms.items():
            mm = m[:v] + m[v + 1 :]
            out[mm] = out.get(mm, 0) + c
        return Poly._raw(self.nvars - 1, {m: as_rat(c) for m, c in out.items() if c})

    def insert_variable(self, v: int) -> Poly:
        """Embed into one more variable, placing the new variable at index ``v``."""
        return Poly._raw(self.nvars + 1, {m[:v] + (0,) + m[v:]: c for m, c in self.terms.items()})

    def homogenize_at(self, v: int, target_degree: int) -> Poly:
        """Homogenize with the new variable inserted at index ``v``."""
        return Poly._raw(
            self.nvars + 1,
            {m[:v] + (target_degree - sum(m),) + m[v:]: c for m, c in self.terms.items()},
        )

    # -- integer normal form ----------------------------------------------

    def denominator_lcm(self) -> int:
        den = 1
        for c in self.terms.values():
            if isinstance(c, Fraction):
                d = c.denominator
                den = den * d // igcd(den, d)
        return den

    def integer_content(self):
        """Positive rational ``c`` with ``self / c`` integral and primitive."""
        den = self.denominator_lcm()
        g = 0
        for c in self.terms.values():
            g = igcd(g, int(c * den))
            if g == 1:
                break
        return Fraction(g, den) if den != 1 else g

    def normalized(self) -> Poly:
        """Integer coefficients, content 1, grlex-leading coefficient positive."""
        if not self.terms:
            return self
        c = self.integer_content()
        if self.leading_coefficient() < 0:
            c = -c
        if c == 1:
            return self
        if isinstance(c, int):
            return Poly._raw(self.nvars, {m: a // c for m, a in self.terms.items()})
        return Poly._raw(self.nvars, {m: as_rat(a / c) for m, a in self.terms.items()})

    # -- rendering --------------------------------------------------------

    def render(self, names: Sequence[str] | None = None) -> str:
        if not self.terms:
            return "0"
        names = names or [f"z{i}" for i in range(self.nvars)]
        parts = []
        for idx, (m, c) in enumerate(self.sorted_terms()):
            neg = c < 0
            a = -c if neg else c
            factors = []
            for name, e in zip(names, m):
                if e == 1:
                    factors.append(name)
                elif e > 1:
                    factors.append(f"{name}^{e}")
            if not factors:
                body = str(a)
            elif a == 1:
                body = "*".join(factors)
            else:
                body = f"{a}*" + "*".join(factors)
            if idx == 0:
                parts.append(f"-{body}" if neg else body)
            else:
                parts.append(f"- {body}" if neg else f"+ {body}")
        return " ".join(parts)

    __str__ = render

    def __repr__(self):
        return f"Poly({self.nvars}, {self.render()!r})"


# -- division -------------------------------------------------------------------


def _divides_mono(d: Monomial, m: Monomial) -> bool:
    return all(a <= b for a, b in zip(d, m))


def _all_int(p: Poly) -> bool:
    return all(type(c) is int for c in p.terms.values())


class _Packer:
    """Packs exponent tuples into one integer whose natural order is graded lex.

    Each field is ``width`` bits wide with a spare top bit, so sums stay inside
    their field and fieldwise comparison can be done with one mask.
    """

    __slots__ = ("n", "width", "mask", "guard")

    def __init__(self, nvars: int, maxdeg: int):
        self.n = nvars
        self.width = max(int(maxdeg).bit_length(), 1) + 1
        self.mask = (1 << self.width) - 1
        g = 0
        for i in range(nvars + 1):
            g |= 1 << (i * self.width + self.width - 1)
        self.guard = g

    def pack(self, m: Monomial) -> int:
        w = self.width
        key = sum(m)
        for e in m:
            key = (key << w) | e
        return key

    def unpack(self, key: int) -> Monomial:
        w, mask = self.width, self.mask
        out = []
        for _ in range(self.n):
            out.append(key & mask)
            key >>= w
        return tuple(reversed(out))

    def divides(self, d: int, m: int) -> bool:
        g = self.guard
        return ((m | g) - d) & g == g


# products with at least this many term pairs go to the compiled kernel
COMPILED_MUL_THRESHOLD = 4000


def _mul_packed(a: Poly, b: Poly) -> Poly:
    if len(a.terms) * len(b.terms) >= COMPILED_MUL_THRESHOLD and _all_int(a) and _all_int(b):
        from ._kernels import sparse_mul

        out = sparse_mul(a.terms, b.terms, a.nvars)
        if out is not None:
            return Poly._raw(a.nvars, {m: c for m, c in out.items() if c})
    da, db = a.total_degree(), b.total_degree()
    pk = _Packer(a.nvars, da + db)
    pa = [(pk.pack(m), c) for m, c in a.terms.items()]
    pb = [(pk.pack(m), c) for m, c in b.terms.items()]
    out: dict = {}
    get = out.get
    for k2, c2 in pb:
        for k1, c1 in pa:
            k = k1 + k2
            out[k] = get(k, 0) + c1 * c2
    unpack = pk.unpack
    return Poly._raw(a.nvars, {unpack(k): as_rat(c) for k, c in out.items() if c})


def divide_exact(a: Poly, b: Poly) -> Poly | None:
    """Return ``a / b`` if ``b`` divides ``a`` exactly, else ``None``."""
    a._check(b)
    if b.is_zero():
        raise ZeroDivisionError("division by the zero polynomial")
    if a.is_zero():
        return a
    if len(b.terms) == 1:
        (mb, cb), = b.terms.items()
        low = a.monomial_content()
        if not _divides_mono(mb, low):
            return None
        q = a.unshift(mb)
        return q if cb == 1 else q.scale(Fraction(1) / cb)
    for v in range(a.nvars):
        if b.degree_in(v) > a.degree_in(v):
            return None
    if b.total_degree() > a.total_degree():
        return None
    integral = all(type(c) is int for c in a.terms.values()) and all(
        type(c) is int for c in b.terms.values()
    )
    if not integral:
        # scale both to integers; the quotient picks up the ratio of the scales
        da, db = a.denominator_lcm(), b.denominator_lcm()
        q = divide_exact(a.scale(da), b.scale(db))
        return None if q is None else q.scale(Fraction(db, da))
    cb = b.integer_content()
    if cb != 1:
        q = divide_exact(a, b.scale(Fraction(1, cb)))
        return None if q is None else q.scale(Fraction(1, cb))
    # b is primitive over the integers: any exact quotient is integral
    pk = _Packer(a.nvars, a.total_degree())
    lead = max(pk.pack(m) for m in b.terms)
    lc_b = b.terms[pk.unpack(lead)]
    rest_b = [(pk.pack(m), c) for m, c in b.terms.items()]
    rest_b = [(k, c) for k, c in rest_b if k != lead]
    rem = {pk.pack(m): c for m, c in a.terms.items()}
    heap = [-k for k in rem]
    heapq.heapify(heap)
    quot: dict = {}
    divides_ = pk.divides
    while heap:
        k = -heapq.heappop(heap)
        c = rem.pop(k, 0)
        if not c:
            continue
        if not divides_(lead, k):
            return None
        qc, r = divmod(c, lc_b)
        if r:
            return None
        qk = k - lead
        quot[qk] = qc
        for kb, cbb in rest_b:
            t = qk + kb
            old = rem.get(t)
            if old is None:
                rem[t] = -qc * cbb
                heapq.heappush(heap, -t)
            else:
                new = old - qc * cbb
                if new:
                    rem[t] = new
                else:
                    del rem[t]
    unpack = pk.unpack
    return Poly._raw(a.nvars, {unpack(k): c for k, c in quot.items()})


def divides(b: Poly, a: Poly) -> bool:
    return divide_exact(a, b) is not None


# -- module-level operations mirroring the methods ------------------------------


def add(a: Poly, b: Poly) -> Poly:
    a._check(b)
    return a + b


def mul(a: Poly, b: Poly) -> Poly:
    a._check(b)
    return a * b


def total_degree(p: Poly):
    return p.total_degree()


def substitute(p: Poly, images: Sequence[Poly]) -> Poly:
    return p.substitute(images)


def evaluate(p: Poly, point: Sequence) -> int | Fraction:
    return p.evaluate(point)


def homogenize(p: Poly, target_degree: int) -> Poly:
    return p.homogenize(target_degree)


def dehomogenize(p: Poly, chart_var: int | None = None) -> Poly:
    return p.dehomogenize(chart_var)


def coefficients_in(p: Poly, v: int) -> dict[int, Poly]:
    """Split ``p`` as a polynomial in ``z_v``; coefficients keep all variables but ``z_v``."""
    out: dict[int, dict] = {}
    for m, c in p.terms.items():
        e = m[v]
        out.setdefault(e, {})[m[:v] + (0,) + m[v + 1 :]] = c
    return {e: Poly._raw(p.nvars, t) for e, t in out.items()}


def from_coefficients(coeffs: dict[int, Poly], v: int, nvars: int) -> Poly:
    out = {}
    for e, c in coeffs.items():
        for m, a in c.terms.items():
            out[m[:v] + (m[v] + e,) + m[v + 1 :]] = a
    return Poly._raw(nvars, out)


def jacobian_determinant(components: Sequence[Poly]) -> Poly:
    """Exact determinant of the Jacobian matrix of a square polynomial system."""
    k = len(components)
    if k == 0:
        raise PolyError("empty system")
    for c in components:
        if c.nvars != k:
            raise PolyError(f"non-square system: {k} components in {c.nvars} variables")
    rows = [[c.derivative(j) for j in range(k)] for c in components]
    return _det(rows, k)


def _det(rows: list[list[Poly]], nvars: int) -> Poly:
    # Laplace expansion along the first row with memoized minors over column subsets
    k = len(rows)
    memo: dict[tuple[int, tuple[int, ...]], Poly] = {}

    def minor(r: int, cols: tuple[int, ...]) -> Poly:
        if r == k:
            return Poly.one(nvars)
        key = (r, cols)
        if key not in memo:
            total = Poly.zero(nvars)
            for idx, c in enumerate(cols):
                entry = rows[r][c]
                if entry.is_zero():
                    continue
                sub = minor(r + 1, cols[:idx] + cols[idx + 1 :])
                term = entry * sub
                total = total - term if idx % 2 else total + term
            memo[key] = total
        return memo[key]

    return minor(0, tuple(range(k)))


def poly_sum(polys: Iterable[Poly], nvars: int) -> Poly:
    out: dict = {}
    for p in polys:
        for m, c in p.terms.items():
            out[m] = out.get(m, 0) + c
    return Poly._raw(nvars, {m: as_rat(c) for m, c in out.items() if c})
