"""Degree sequences, growth classification and stability analyses.

Everything that decides a growth class works on exact integers.  Floats only
appear in the reported dynamical degree estimates, which are approximations
by nature and are always accompanied by the bracket of observed ratios.
"""

from __future__ import annotations

import json
import random
from dataclasses import dataclass
from fractions import Fraction
from math import factorial, gcd as igcd, lcm as ilcm
from typing import Iterator, Sequence

from .maps import (
    AffineMapSpec,
    CompositionCollapse,
    IterationAborted,
    MapError,
    ProjectiveMap,
    compose,
)
from .poly import Poly

__all__ = [
    "WINDOW",
    "HORIZON",
    "HorizonTooShort",
    "NotAutomorphismShaped",
    "HyperplaneInIndeterminacy",
    "DegreeSequence",
    "GrowthClass",
    "DynamicalDegreeEstimate",
    "StabilityReport",
    "IndeterminacyQuery",
    "OrbitResult",
    "NOT_BLOWN_DOWN",
    "iterates",
    "degree_sequence",
    "classify_growth",
    "dynamical_degree_estimate",
    "stability_check",
    "blow_down_image",
    "indeterminacy_membership",
    "indeterminacy_spot_check",
    "orbit_point",
    "bidegree_growth_check",
    "preserves_fibration",
    "normalize_point",
    "render_point",
    "parse_point",
]

WINDOW = 3
HORIZON = 10
RATIO_TOLERANCE = 1e-9
MAX_PERIOD = 3


class HorizonTooShort(ValueError):
    pass


class NotAutomorphismShaped(MapError):
    pass


class HyperplaneInIndeterminacy(ArithmeticError):
    """Every component vanishes on the hyperplane."""


# -- degree sequences -----------------------------------------------------------


@dataclass(frozen=True)
class DegreeSequence:
    degrees: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "degrees", tuple(int(d) for d in self.degrees))
        if any(d < 1 for d in self.degrees):
            raise ValueError("degrees of iterates are at least 1")

    @property
    def N(self) -> int:
        return len(self.degrees)

    def __getitem__(self, n: int) -> int:
        """``deg f^n`` for ``1 <= n <= N``."""
        if not 1 <= n <= self.N:
            raise IndexError(n)
        return self.degrees[n - 1]

    def __len__(self):
        return self.N

    def __iter__(self):
        return iter(self.degrees)


def iterates(m: ProjectiveMap) -> Iterator[ProjectiveMap]:
    """Yield ``m, m^2, m^3, ...`` lazily, with ``m^n = m o m^(n-1)``."""
    cur = m
    yield cur
    step = 1
    while True:
        step += 1
        try:
            cur = compose(m, cur)
        except CompositionCollapse as exc:
            raise IterationAborted(step, [], exc) from exc
        yield cur


def degree_sequence(
    m: ProjectiveMap, N: int, method: str = "exact", seeds: Sequence[int] = (0, 1)
) -> DegreeSequence:
    """Degrees of the normalized iterates ``m^1 .. m^N``.

    ``method="exact"`` composes the iterates symbolically.  ``method="line"``
    restricts to random lines over a prime field (see :mod:`degrowth.linecheck`),
    once per seed, and insists that all runs agree; it is for horizons where
    the exact iterates are too large to hold.

    ``method="certified"`` is for polynomial maps only.  Line restrictions
    modulo a prime give lower bounds, ``deg f^(a+b) <= deg f^a * deg f^b``
    gives upper bounds, and wherever the two meet the degree is proven.  If
    they ever fail to meet, the exact route is used instead.
    """
    if N < 1:
        raise HorizonTooShort("need N >= 1")
    if method == "line":
        from .linecheck import line_degree_sequence

        runs = {line_degree_sequence(m, N, seed=s) for s in seeds}
        if len(runs) != 1:
            raise ArithmeticError(f"line degree runs disagree: {sorted(runs)}")
        return DegreeSequence(runs.pop())
    if method == "certified":
        return _certified_degrees(m, N, seeds)
    if method != "exact":
        raise ValueError(f"unknown method {method!r}")
    degs: list[int] = []
    it = iterates(m)
    try:
        for _ in range(N):
            degs.append(next(it).degree)
    except IterationAborted as exc:
        exc.partial_degrees = tuple(degs)
        raise
    return DegreeSequence(tuple(degs))


def _certified_degrees(m: ProjectiveMap, N: int, seeds: Sequence[int]) -> DegreeSequence:
    from .linecheck import affine_line_lower_bounds

    runs = [affine_line_lower_bounds(m, N, seed=s) for s in seeds]
    lower = [max(col) for col in zip(*runs)]
    degs = [m.degree]
    for n in range(2, N + 1):
        upper = min(degs[a - 1] * degs[n - a - 1] for a in range(1, n))
        if lower[n - 1] != upper:
            return degree_sequence(m, N, method="exact")
        degs.append(upper)
    return DegreeSequence(tuple(degs))


# -- classification -------------------------------------------------------------


def _diff(seq: Sequence[int]) -> list[int]:
    return [b - a for a, b in zip(seq, seq[1:])]


@dataclass(frozen=True)
class GrowthClass:
    """Classification of a finite degree sequence.

    ``tag`` is one of ``Bounded``, ``Polynomial``, ``Exponential``,
    ``Undetermined``.  ``period`` is 1 for an exact polynomial and the
    observed period of the top difference for a quasi-polynomial; for an
    exponential it is the subsampling step used for the ratios.
    """

    tag: str
    constant: int | None = None
    ell: int | None = None
    leading: Fraction | None = None
    lam: float | None = None
    lambda_bracket: tuple[float, float] | None = None
    ratio_tail: tuple[float, ...] = ()
    period: int | None = None

    def __post_init__(self):
        if self.tag == "Polynomial" and not (self.ell and self.ell >= 1 and self.leading and self.leading > 0):
            raise ValueError("Polynomial needs ell >= 1 and leading > 0")
        if self.tag == "Exponential" and not (self.lam and self.lam > 1):
            raise ValueError("Exponential needs lambda > 1")

    def to_dict(self) -> dict:
        return {
            "tag": self.tag,
            "constant": self.constant,
            "ell": self.ell,
            "leading": None if self.leading is None else str(self.leading),
            "lambda": self.lam,
            "lambda_bracket": None if self.lambda_bracket is None else list(self.lambda_bracket),
            "ratio_tail": list(self.ratio_tail),
            "period": self.period,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True)

    def __str__(self):
        if self.tag == "Bounded":
            return f"Bounded({self.constant})"
        if self.tag == "Polynomial":
            return f"Polynomial(ell={self.ell}, leading={self.leading})"
        if self.tag == "Exponential":
            lo, hi = self.lambda_bracket
            return f"Exponential(lambda~{self.lam:.6g} in [{lo:.6g}, {hi:.6g}])"
        return "Undetermined"


def _periodic(seq: Sequence[int], p: int) -> bool:
    return all(seq[i] == seq[i - p] for i in range(p, len(seq)))


def _polynomial_class(d: Sequence[int], window: int) -> GrowthClass | None:
    diffs = list(d)
    for ell in range(1, len(d)):
        diffs = _diff(diffs)
        if len(diffs) < window:
            return None
        tail = diffs[-window:]
        if len(set(tail)) == 1 and tail[0] != 0:
            if tail[0] < 0:
                return None
            return GrowthClass("Polynomial", ell=ell, leading=Fraction(tail[0], factorial(ell)), period=1)
        # quasi-polynomial: the top difference repeats with a short period
        for p in range(2, MAX_PERIOD + 1):
            span = max(2 * p, window)
            if len(diffs) < span:
                break
            tail = diffs[-span:]
            if _periodic(tail, p) and min(tail) >= 0 and sum(tail[-p:]) > 0:
                mean = Fraction(sum(tail[-p:]), p)
                return GrowthClass("Polynomial", ell=ell, leading=mean / factorial(ell), period=p)
    return None


def _ratio_class(d: Sequence[int], window: int, step: int) -> GrowthClass | None:
    ratios = [d[i + step] / d[i] for i in range(len(d) - step)]
    if len(ratios) < window:
        return None
    tail = ratios[-window:]
    if min(tail) <= 1:
        return None
    if any(b < a - RATIO_TOLERANCE for a, b in zip(tail, tail[1:])):
        return None
    per_step = [r ** (1 / step) for r in tail]
    return GrowthClass(
        "Exponential",
        lam=per_step[-1],
        lambda_bracket=(min(per_step), max(per_step)),
        ratio_tail=tuple(d[i + 1] / d[i] for i in range(len(d) - 1)),
        period=step,
    )


def classify_growth(s: DegreeSequence | Sequence[int], window: int = WINDOW) -> GrowthClass:
    """Classify a degree sequence as bounded, polynomial or exponential.

    Rules, tried in order on the exact integers:

    * Bounded(c): the last ``window`` entries all equal ``c``.
    * Polynomial(ell): for the smallest ``ell``, the ``ell``-th difference is
      a nonzero constant on the last ``window`` entries.  If instead it is
      periodic with period 2 or 3 over at least two full periods, nonnegative
      with positive mean, the sequence is a quasi-polynomial and ``leading``
      is that mean divided by ``ell!``.
    * Exponential: the last ``window`` consecutive ratios exceed 1 and do not
      decrease by more than ``RATIO_TOLERANCE``.  When they alternate, ratios
      two steps apart are tried, and the reported rate is their square root.
    * Undetermined otherwise.
    """
    d = list(s.degrees if isinstance(s, DegreeSequence) else s)
    if len(d) < 6:
        raise HorizonTooShort(f"classification needs N >= 6, got {len(d)}")
    if window < 2:
        raise ValueError("window must be at least 2")
    tail = d[-window:]
    if len(set(tail)) == 1:
        return GrowthClass("Bounded", constant=tail[0])
    poly = _polynomial_class(d, window)
    if poly is not None:
        return poly
    for step in (1, 2):
        exp = _ratio_class(d, window, step)
        if exp is not None:
            return exp
    return GrowthClass("Undetermined")


@dataclass(frozen=True)
class DynamicalDegreeEstimate:
    root: float
    last_ratio: float
    bracket: tuple[float, float]
    certified_one: bool

    def to_dict(self) -> dict:
        return {
            "root": self.root,
            "last_ratio": self.last_ratio,
            "bracket": list(self.bracket),
            "certified_one": self.certified_one,
        }


def dynamical_degree_estimate(s: DegreeSequence | Sequence[int], window: int = WINDOW) -> DynamicalDegreeEstimate:
    """Estimate ``lim (deg f^n)^(1/n)`` from a finite sequence.

    The value 1 is certified when the sequence classifies as bounded or
    polynomial; this needs ``N >= 6``.
    """
    d = list(s.degrees if isinstance(s, DegreeSequence) else s)
    if len(d) < 4:
        raise HorizonTooShort(f"estimate needs N >= 4, got {len(d)}")
    ratios = [b / a for a, b in zip(d, d[1:])]
    tail = ratios[-window:]
    certified = False
    if len(d) >= 6:
        certified = classify_growth(d, window).tag in ("Bounded", "Polynomial")
    return DynamicalDegreeEstimate(
        root=d[-1] ** (1 / len(d)),
        last_ratio=ratios[-1],
        bracket=(min(tail), max(tail)),
        certified_one=certified,
    )


# -- points, indeterminacy, orbits ----------------------------------------------


def normalize_point(coords: Sequence) -> tuple[int, ...]:
    """Integer representative with coprime entries and first nonzero entry positive."""
    fr = [Fraction(c) for c in coords]
    if not any(fr):
        raise ValueError("the zero vector is not a projective point")
    den = 1
    for c in fr:
        den = ilcm(den, c.denominator)
    ints = [int(c * den) for c in fr]
    g = 0
    for c in ints:
        g = igcd(g, c)
    ints = [c // g for c in ints]
    if next(c for c in ints if c) < 0:
        ints = [-c for c in ints]
    return tuple(ints)


def render_point(p: Sequence[int]) -> str:
    return "(" + ":".join(str(c) for c in p) + ")"


def parse_point(text: str) -> tuple[Fraction, ...]:
    """Read ``(a:b:...)`` or ``a,b,...`` with rational entries such as ``-1/2``."""
    body = text.strip()
    if body.startswith("(") and body.endswith(")"):
        body = body[1:-1]
    parts = body.replace(",", ":").split(":")
    try:
        return tuple(Fraction(x.strip()) for x in parts)
    except ValueError as exc:
        raise ValueError(f"malformed point {text!r}") from exc


@dataclass(frozen=True)
class IndeterminacyQuery:
    """A projective point, or the coordinate subspace where ``zero_coords`` vanish."""

    point: tuple | None = None
    zero_coords: frozenset[int] | None = None

    def __post_init__(self):
        if (self.point is None) == (self.zero_coords is None):
            raise ValueError("give exactly one of point or zero_coords")
        if self.zero_coords is not None:
            object.__setattr__(self, "zero_coords", frozenset(self.zero_coords))

    def validate(self, nvars: int) -> None:
        if self.point is not None:
            if len(self.point) != nvars:
                raise ValueError(f"point needs {nvars} coordinates")
            if not any(Fraction(c) for c in self.point):
                raise ValueError("the zero vector is not a projective point")
        else:
            zs = self.zero_coords
            if not zs or len(zs) >= nvars or not all(0 <= i < nvars for i in zs):
                raise ValueError("subspace must force a nonempty proper subset of coordinates to zero")


def indeterminacy_membership(m: ProjectiveMap, q: IndeterminacyQuery) -> bool:
    """Point: whether every component vanishes there.  Subspace: whether it is contained in Ind(m)."""
    q.validate(m.nvars)
    if q.point is not None:
        return not any(m.evaluate(q.point))
    zero = Poly.zero(m.nvars)
    images = [zero if i in q.zero_coords else Poly.var(m.nvars, i) for i in range(m.nvars)]
    return all(c.substitute(images).is_zero() for c in m.components)


def indeterminacy_spot_check(
    m: ProjectiveMap, zero_coords: Sequence[int], samples: int = 20, seed: int = 0
) -> bool:
    """Random rational points off the subspace are not indeterminate.

    One-sided support for an equality ``Ind(m) = {z_i = 0, i in zero_coords}``
    next to the containment test.
    """
    rng = random.Random(seed)
    zs = sorted(set(zero_coords))
    for _ in range(samples):
        pt = [Fraction(rng.randint(-50, 50), rng.randint(1, 9)) for _ in range(m.nvars)]
        # force the point off the subspace
        j = rng.choice(zs)
        while pt[j] == 0:
            pt[j] = Fraction(rng.randint(1, 50), rng.randint(1, 9))
        if not any(m.evaluate(pt)):
            return False
    return True


@dataclass(frozen=True)
class OrbitResult:
    """``points[j]`` is the image after ``j + 1`` steps.

    ``indeterminate_at`` is the step that could not be taken because the
    current point lies in the indeterminacy set, or ``None``.
    """

    start: tuple[int, ...]
    points: tuple[tuple[int, ...], ...]
    indeterminate_at: int | None

    def to_dict(self) -> dict:
        return {
            "start": render_point(self.start),
            "points": [render_point(p) for p in self.points],
            "indeterminate_at": self.indeterminate_at,
        }


def orbit_point(m: ProjectiveMap, p: Sequence, n: int) -> OrbitResult:
    cur = normalize_point(p)
    if len(cur) != m.nvars:
        raise ValueError(f"point needs {m.nvars} coordinates")
    start = cur
    pts = []
    for step in range(1, n + 1):
        img = m.evaluate(cur)
        if not any(img):
            return OrbitResult(start, tuple(pts), step)
        cur = normalize_point(img)
        pts.append(cur)
    return OrbitResult(start, tuple(pts), None)


class _NotBlownDown:
    _inst = None

    def __new__(cls):
        if cls._inst is None:
            cls._inst = super().__new__(cls)
        return cls._inst

    def __repr__(self):
        return "NOT_BLOWN_DOWN"

    def __bool__(self):
        return False


NOT_BLOWN_DOWN = _NotBlownDown()


def blow_down_image(m: ProjectiveMap, hyperplane: int) -> tuple[int, ...] | _NotBlownDown:
    """Image of the hyperplane ``{z_hyperplane = 0}`` when it is a single point."""
    from .gcd import gcd_list
    from .poly import divide_exact

    if not 0 <= hyperplane < m.nvars:
        raise ValueError(f"no coordinate z{hyperplane}")
    zero = Poly.zero(m.nvars)
    images = [zero if i == hyperplane else Poly.var(m.nvars, i) for i in range(m.nvars)]
    restr = [c.substitute(images) for c in m.components]
    if all(r.is_zero() for r in restr):
        raise HyperplaneInIndeterminacy(f"every component vanishes on z{hyperplane} = 0")
    g = gcd_list(restr)
    reduced = [divide_exact(r, g) for r in restr]
    # after removing the common factor, proportional components are constants
    if all(r.is_constant() for r in reduced):
        return normalize_point([r.constant_value() if not r.is_zero() else 0 for r in reduced])
    return NOT_BLOWN_DOWN


# -- algebraic stability ----------------------------------------------------------


@dataclass(frozen=True)
class StabilityReport:
    stable: bool
    failure_step: int | None
    degree_flags: tuple[tuple[int, bool], ...]
    degrees: tuple[int, ...]
    blow_down: tuple[int, tuple[int, ...]] | None
    omega_trace: tuple[tuple[int, ...], ...] = ()
    omega_step: int | None = None

    def __post_init__(self):
        if self.stable == (self.failure_step is not None):
            raise ValueError("stable XOR failure_step")

    def to_dict(self) -> dict:
        return {
            "stable": self.stable,
            "failure_step": self.failure_step,
            "degree_flags": [[i, ok] for i, ok in self.degree_flags],
            "degrees": list(self.degrees),
            "blow_down": None
            if self.blow_down is None
            else {"hyperplane": self.blow_down[0], "point": render_point(self.blow_down[1])},
            "omega_trace": [render_point(p) for p in self.omega_trace],
            "omega_step": self.omega_step,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True)


def _check_automorphism_shape(m: ProjectiveMap) -> None:
    last = m.components[-1]
    k = m.nvars - 1
    if not last.is_monomial() or last.variables() != {k}:
        raise NotAutomorphismShaped("last component is not a power of the last variable")


def stability_check(m: ProjectiveMap, k: int | None = None) -> StabilityReport:
    """Algebraic stability of the extension of a polynomial automorphism of C^k.

    Degrees ``deg f^i`` are computed for ``i <= k``.  The hyperplane at
    infinity ``{z_k = 0}`` is also traced: if it is blown down to a point,
    the orbit of that point is followed until it meets the indeterminacy set,
    and ``omega_step`` records after how many steps that happens.
    """
    _check_automorphism_shape(m)
    if k is None:
        k = m.nvars - 1
    if k != m.nvars - 1:
        raise ValueError(f"map acts on P^{m.nvars - 1}, not P^{k}")
    d = m.degree
    seq = degree_sequence(m, k)
    flags = tuple((i, seq[i] == d**i) for i in range(1, k + 1))
    failure = next((i for i, ok in flags if not ok), None)
    point = blow_down_image(m, k)
    blow = None
    trace: list[tuple[int, ...]] = []
    omega_step = None
    if point is not NOT_BLOWN_DOWN:
        blow = (k, point)
        cur = point
        for step in range(1, k):
            trace.append(cur)
            if not any(m.evaluate(cur)):
                omega_step = step
                break
            cur = normalize_point(m.evaluate(cur))
    return StabilityReport(
        stable=failure is None,
        failure_step=failure,
        degree_flags=flags,
        degrees=seq.degrees,
        blow_down=blow,
        omega_trace=tuple(trace),
        omega_step=omega_step,
    )


def bidegree_growth_check(p_exp: int, q_exp: int, k: int) -> bool:
    """Whether growth exponents ``p`` of ``f^n`` and ``q`` of ``f^-n`` are compatible in dimension ``k``."""
    if p_exp < 1 or q_exp < 1:
        raise ValueError("growth exponents are at least 1")
    return p_exp <= k * q_exp and q_exp <= k * p_exp


def preserves_fibration(spec: AffineMapSpec, i: int) -> bool:
    """Whether component ``i`` is affine in ``z_i`` alone, so fibers ``z_i = c`` go to fibers."""
    num, den = spec.components[i]
    if not den.is_constant():
        return False
    return num.variables() <= {i} and num.total_degree() == 1 and num.degree_in(i) == 1
