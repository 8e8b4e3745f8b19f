"""Polynomial automorphisms of affine space and rational self-maps of projective space.

Affine maps are described by :class:`AffineMapSpec` (components are pairs
``(numerator, denominator)`` in ``k`` variables).  All dynamics happen on the
projective side: :func:`homogenize_map` turns a spec into a
:class:`ProjectiveMap` on ``P^k`` whose ``k + 1`` homogeneous components are
coprime and canonically scaled, and :func:`compose` keeps that normal form.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Sequence

from .gcd import gcd_list, lcm
from .poly import Poly, as_rat, divide_exact

__all__ = [
    "MapError",
    "CompositionCollapse",
    "IterationAborted",
    "NoInverse",
    "AffineGenerator",
    "Elementary",
    "HenonStep",
    "AffineMapSpec",
    "ProjectiveMap",
    "Bidegree",
    "homogenize_map",
    "compose",
    "iterate",
    "inverse",
    "monomial_map",
    "degree",
    "bidegree",
    "identity_map",
    "permutation",
]


class MapError(ValueError):
    pass


class NoInverse(MapError):
    pass


class CompositionCollapse(ArithmeticError):
    """Every component vanished after substitution: the inner map lands in Ind of the outer."""

    def __init__(self, message: str, step: int | None = None):
        super().__init__(message)
        self.step = step


class IterationAborted(ArithmeticError):
    def __init__(self, step: int, partial: list[ProjectiveMap], cause: Exception):
        super().__init__(f"iteration collapsed at step {step}: {cause}")
        self.step = step
        self.partial = partial
        self.cause = cause


# -- generators -----------------------------------------------------------------


def _mat_inverse(m: Sequence[Sequence]) -> list[list[Fraction]]:
    n = len(m)
    a = [[Fraction(x) for x in row] + [Fraction(int(i == j)) for j in range(n)] for i, row in enumerate(m)]
    for col in range(n):
        piv = next((r for r in range(col, n) if a[r][col]), None)
        if piv is None:
            raise MapError("singular matrix")
        a[col], a[piv] = a[piv], a[col]
        p = a[col][col]
        a[col] = [x / p for x in a[col]]
        for r in range(n):
            if r != col and a[r][col]:
                f = a[r][col]
                a[r] = [x - f * y for x, y in zip(a[r], a[col])]
    return [row[n:] for row in a]


def det(m: Sequence[Sequence]) -> Fraction:
    n = len(m)
    a = [[Fraction(x) for x in row] for row in m]
    if any(len(row) != n for row in a):
        raise MapError("matrix is not square")
    sign = 1
    for col in range(n):
        piv = next((r for r in range(col, n) if a[r][col]), None)
        if piv is None:
            return Fraction(0)
        if piv != col:
            a[col], a[piv] = a[piv], a[col]
            sign = -sign
        for r in range(col + 1, n):
            f = a[r][col] / a[col][col]
            if f:
                a[r] = [x - f * y for x, y in zip(a[r], a[col])]
    out = Fraction(sign)
    for i in range(n):
        out *= a[i][i]
    return out


@dataclass(frozen=True)
class AffineGenerator:
    """``z -> M z + t`` with ``M`` invertible."""

    matrix: tuple[tuple, ...]
    translation: tuple = ()
    tag = "affine"

    def __post_init__(self):
        mat = tuple(tuple(as_rat(x) for x in row) for row in self.matrix)
        k = len(mat)
        t = tuple(as_rat(x) for x in self.translation) or (0,) * k
        if len(t) != k or any(len(row) != k for row in mat):
            raise MapError("affine generator needs a square matrix and matching translation")
        if det(mat) == 0:
            raise MapError("affine generator matrix is singular")
        object.__setattr__(self, "matrix", mat)
        object.__setattr__(self, "translation", t)

    @property
    def k(self) -> int:
        return len(self.matrix)

    def components(self) -> list[Poly]:
        z = Poly.gens(self.k)
        out = []
        for row, t in zip(self.matrix, self.translation):
            p = Poly.constant(self.k, t)
            for c, zi in zip(row, z):
                if c:
                    p = p + zi.scale(c)
            out.append(p)
        return out

    def inverse(self) -> AffineGenerator:
        inv = _mat_inverse(self.matrix)
        t = [-sum(inv[i][j] * self.translation[j] for j in range(self.k)) for i in range(self.k)]
        return AffineGenerator(tuple(tuple(r) for r in inv), tuple(t))

    def degree(self) -> int:
        return 1


@dataclass(frozen=True)
class Elementary:
    """``z_index -> scalar * z_index + poly``, with ``poly`` in ``z_{index+1}, ...`` only."""

    k: int
    index: int
    poly: Poly
    scalar: int | Fraction = 1
    tag = "elementary"

    def __post_init__(self):
        object.__setattr__(self, "scalar", as_rat(self.scalar))
        if not 0 <= self.index < self.k:
            raise MapError("elementary index out of range")
        if self.poly.nvars != self.k:
            raise MapError("elementary polynomial has the wrong variable count")
        if any(v <= self.index for v in self.poly.variables()):
            raise MapError(f"elementary polynomial may only involve variables after z{self.index}")
        if self.scalar == 0:
            raise MapError("elementary scalar must be a unit")

    def components(self) -> list[Poly]:
        z = Poly.gens(self.k)
        z[self.index] = z[self.index].scale(self.scalar) + self.poly
        return z

    def inverse(self) -> Elementary:
        s = Fraction(1) / Fraction(self.scalar)
        return Elementary(self.k, self.index, self.poly.scale(-s), s)

    def degree(self) -> int:
        return max(1, self.poly.total_degree() if not self.poly.is_zero() else 1)


@dataclass(frozen=True)
class HenonStep:
    """``(z0, z1) -> (z1, P(z1) - delta * z0)`` with ``deg P >= 2``.

    ``P`` is a univariate polynomial (one variable).  The inverse
    ``(z0, z1) -> ((P(z0) - z1) / delta, z0)`` is also stored as a step with
    ``inverted=True``.
    """

    P: Poly
    delta: int | Fraction = 1
    inverted: bool = False
    tag = "henon_step"
    k = 2

    def __post_init__(self):
        object.__setattr__(self, "delta", as_rat(self.delta))
        if self.P.nvars != 1:
            raise MapError("Henon polynomial must be univariate")
        if self.P.is_zero() or self.P.total_degree() < 2:
            raise MapError("Henon polynomial must have degree >= 2")
        if self.delta == 0:
            raise MapError("Henon delta must be nonzero")

    def components(self) -> list[Poly]:
        z0, z1 = Poly.gens(2)
        if not self.inverted:
            return [z1, self.P.substitute([z1]) - z0.scale(self.delta)]
        return [(self.P.substitute([z0]) - z1).scale(Fraction(1) / Fraction(self.delta)), z0]

    def inverse(self) -> HenonStep:
        return HenonStep(self.P, self.delta, not self.inverted)

    def degree(self) -> int:
        return self.P.total_degree()


Generator = AffineGenerator | Elementary | HenonStep


def permutation(perm: Sequence[int]) -> AffineGenerator:
    """Affine generator sending ``z`` to ``(z[perm[0]], z[perm[1]], ...)``."""
    k = len(perm)
    return AffineGenerator(tuple(tuple(int(j == perm[i]) for j in range(k)) for i in range(k)))


# -- affine specifications ------------------------------------------------------


def _compose_polys(outer: Sequence[Poly], inner: Sequence[Poly]) -> list[Poly]:
    return [p.substitute(inner) for p in outer]


@dataclass(frozen=True, eq=False)
class AffineMapSpec:
    """A map of affine ``k``-space, given by rational (or polynomial) components."""

    k: int
    components: tuple[tuple[Poly, Poly], ...]
    kind: str = "polynomial"
    declared_inverse: AffineMapSpec | None = None
    generator_word: tuple | None = None
    name: str = ""

    def __post_init__(self):
        comps = tuple((n, d) for n, d in self.components)
        object.__setattr__(self, "components", comps)
        if self.kind not in ("polynomial", "rational"):
            raise MapError(f"unknown map kind {self.kind!r}")
        if len(comps) != self.k:
            raise MapError(f"expected {self.k} components, got {len(comps)}")
        for num, den in comps:
            if num.nvars != self.k or den.nvars != self.k:
                raise MapError("component variable count does not match the dimension")
            if den.is_zero():
                raise MapError("zero denominator")
            if self.kind == "polynomial" and not den.is_constant():
                raise MapError("polynomial map with a non-constant denominator")
        if self.declared_inverse is not None:
            if self.declared_inverse.k != self.k:
                raise MapError("declared inverse lives in another dimension")
            check = compose(homogenize_map(self), homogenize_map(self.declared_inverse))
            if not check.is_identity():
                raise MapError(f"declared inverse of {self.name or 'map'} does not compose to the identity")

    @classmethod
    def polynomial(cls, polys: Sequence[Poly], **kw) -> AffineMapSpec:
        polys = list(polys)
        k = len(polys)
        one = Poly.one(k)
        return cls(k, tuple((p, one) for p in polys), "polynomial", **kw)

    @classmethod
    def rational(cls, pairs: Sequence[tuple[Poly, Poly]], **kw) -> AffineMapSpec:
        pairs = list(pairs)
        k = len(pairs)
        kind = "polynomial" if all(d.is_constant() for _, d in pairs) else "rational"
        if kind == "polynomial":
            pairs = [(n.scale(Fraction(1) / Fraction(d.constant_value())), Poly.one(k)) for n, d in pairs]
        return cls(k, tuple(pairs), kind, **kw)

    @classmethod
    def from_word(cls, word: Sequence, k: int | None = None, **kw) -> AffineMapSpec:
        """Expand a generator word; ``word[0]`` is applied first."""
        word = tuple(word)
        if not word:
            raise MapError("empty generator word")
        k = k or word[0].k
        comps = Poly.gens(k)
        for g in word:
            if g.k != k:
                raise MapError("generators of different dimensions")
            comps = _compose_polys(g.components(), comps)
        return cls.polynomial(comps, generator_word=word, **kw)

    def polys(self) -> list[Poly]:
        if self.kind != "polynomial":
            raise MapError("map has non-polynomial components")
        return [n.scale(Fraction(1) / Fraction(d.constant_value())) for n, d in self.components]

    def affine_degree(self) -> int:
        return max(max(n.total_degree(), d.total_degree(), 0) for n, d in self.components)

    @cached_property
    def projective(self) -> ProjectiveMap:
        return homogenize_map(self)

    def render(self) -> str:
        parts = []
        for n, d in self.components:
            if d == Poly.one(self.k):
                parts.append(n.render())
            else:
                parts.append(f"({n.render()})/({d.render()})")
        return "(" + ", ".join(parts) + ")"

    def __str__(self):
        return self.render()


# -- projective maps ------------------------------------------------------------


def _normalize_tuple(comps: Sequence[Poly]) -> tuple[Poly, ...]:
    """Canonical scaling: integer coefficients, joint content 1, first nonzero component's leading coefficient positive."""
    from math import gcd as igcd

    den = 1
    for c in comps:
        d = c.denominator_lcm()
        den = den * d // igcd(den, d)
    if den != 1:
        comps = [c.scale(den) for c in comps]
    g = 0
    for c in comps:
        for a in c.terms.values():
            g = igcd(g, a)
            if g == 1:
                break
    first = next(c for c in comps if not c.is_zero())
    if first.leading_coefficient() < 0:
        g = -g
    if g != 1:
        comps = [Poly._raw(c.nvars, {m: a // g for m, a in c.terms.items()}) for c in comps]
    return tuple(comps)


class ProjectiveMap:
    """A rational self-map of ``P^k`` in canonical form.

    ``components`` are ``k + 1`` homogeneous polynomials in ``k + 1`` variables
    of one common degree, with no common factor.
    """

    def __init__(self, components: Sequence[Poly], *, normalize: bool = True):
        comps = list(components)
        if not comps:
            raise MapError("projective map needs components")
        k = len(comps) - 1
        for c in comps:
            if c.nvars != k + 1:
                raise MapError(f"component in {c.nvars} variables, expected {k + 1}")
        if all(c.is_zero() for c in comps):
            raise CompositionCollapse("all components are zero")
        if normalize:
            g = gcd_list(comps)
            if not g.is_constant():
                comps = [divide_exact(c, g) if not c.is_zero() else c for c in comps]
            comps = list(_normalize_tuple(comps))
        degs = {c.total_degree() for c in comps if not c.is_zero()}
        if len(degs) != 1 or not all(c.is_homogeneous() for c in comps):
            raise MapError("components must be homogeneous of one common degree")
        self.k = k
        self.components = tuple(comps)

    @property
    def degree(self) -> int:
        return next(c.total_degree() for c in self.components if not c.is_zero())

    @property
    def nvars(self) -> int:
        return self.k + 1

    def is_identity(self) -> bool:
        return self.components == tuple(Poly.gens(self.k + 1))

    def __eq__(self, other):
        return isinstance(other, ProjectiveMap) and self.components == other.components

    def __hash__(self):
        return hash(self.components)

    def same_up_to_scalar(self, other: ProjectiveMap) -> bool:
        return self == other or self.components == tuple(-c for c in other.components)

    def evaluate(self, point: Sequence) -> tuple:
        return tuple(c.evaluate(point) for c in self.components)

    def affine_chart(self) -> list[tuple[Poly, Poly]]:
        """Reduced fractions ``(num_i, den_i)`` of ``component_i / component_k`` in the chart ``z_k = 1``."""
        last = self.components[-1].dehomogenize()
        if last.is_zero():
            raise MapError("last component vanishes; no affine chart image")
        out = []
        for c in self.components[:-1]:
            num = c.dehomogenize()
            if num.is_zero():
                out.append((num, Poly.one(self.k)))
                continue
            g = gcd_list([num, last])
            n, d = divide_exact(num, g), divide_exact(last, g)
            lc = d.leading_coefficient()
            out.append((n.scale(Fraction(1) / Fraction(lc)), d.scale(Fraction(1) / Fraction(lc))))
        return out

    def render(self) -> str:
        return "(" + " : ".join(c.render() for c in self.components) + ")"

    def __str__(self):
        return self.render()

    def __repr__(self):
        return f"ProjectiveMap{self.render()}"


def identity_map(k: int) -> ProjectiveMap:
    return ProjectiveMap(Poly.gens(k + 1), normalize=False)


@dataclass(frozen=True)
class Bidegree:
    fwd: int
    bwd: int

    def __post_init__(self):
        if self.fwd < 1 or self.bwd < 1:
            raise MapError("bidegree entries must be >= 1")


def homogenize_map(m: AffineMapSpec) -> ProjectiveMap:
    dens = [d for _, d in m.components]
    common = dens[0].normalized()
    for d in dens[1:]:
        common = lcm(common, d)
    cleared = []
    for n, d in m.components:
        factor = divide_exact(common, d)
        if factor is None:
            raise MapError("malformed denominators")
        cleared.append(n * factor)
    if common.is_zero():
        raise MapError("zero denominator after clearing")
    top = max(max((c.total_degree() for c in cleared if not c.is_zero()), default=0), common.total_degree())
    comps = [c.homogenize(top) for c in cleared] + [common.homogenize(top)]
    return ProjectiveMap(comps)


def compose(g: ProjectiveMap, f: ProjectiveMap) -> ProjectiveMap:
    """``g o f``, reduced to canonical form."""
    if g.k != f.k:
        raise MapError("cannot compose maps of different dimensions")
    comps = [c.substitute(f.components) for c in g.components]
    if all(c.is_zero() for c in comps):
        raise CompositionCollapse("image of the inner map lies in the indeterminacy set of the outer map")
    out = ProjectiveMap(comps)
    assert out.degree <= g.degree * f.degree
    return out


def iterate(m: ProjectiveMap, n: int) -> list[ProjectiveMap]:
    """Iterates ``m, m^2, ..., m^n`` with ``m^j = m o m^(j-1)``."""
    if n < 1:
        raise MapError("need n >= 1")
    out = [m]
    for step in range(2, n + 1):
        try:
            out.append(compose(m, out[-1]))
        except CompositionCollapse as exc:
            raise IterationAborted(step, out, exc) from exc
    return out


def inverse(m: AffineMapSpec) -> AffineMapSpec:
    if m.generator_word:
        word = tuple(g.inverse() for g in reversed(m.generator_word))
        inv = AffineMapSpec.from_word(word, m.k, name=f"{m.name}^-1" if m.name else "")
    elif m.declared_inverse is not None:
        inv = m.declared_inverse
    else:
        raise NoInverse(f"no inverse information for {m.name or 'map'}")
    if not compose(m.projective, inv.projective).is_identity():
        raise MapError("inverse verification failed")
    return inv


def monomial_map(A: Sequence[Sequence[int]]) -> ProjectiveMap:
    k = len(A)
    if any(len(row) != k for row in A):
        raise MapError("matrix must be square")
    if det(A) == 0:
        raise MapError("singular matrix")
    pairs = []
    for row in A:
        num = [max(e, 0) for e in row]
        den = [max(-e, 0) for e in row]
        pairs.append((Poly.monomial(num), Poly.monomial(den)))
    return homogenize_map(AffineMapSpec.rational(pairs))


def degree(m: ProjectiveMap) -> int:
    return m.degree


def bidegree(m: AffineMapSpec) -> Bidegree:
    return Bidegree(m.projective.degree, inverse(m).projective.degree)
