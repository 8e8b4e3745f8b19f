"""Catalog of explicit maps with their degree laws.

Each entry builds an :class:`AffineMapSpec` from a few integer parameters and
carries the closed-form degree of its iterates when one is known.  Building
an entry checks that the closed form at ``n = 1`` matches the degree of the
map actually built, so a typo in either side is caught immediately.

Automorphisms come with an inverse, either as a generator word (affine maps,
elementary shears, permutations) or as an explicit map that is verified by
composition when the entry is built.
"""

from __future__ import annotations

import dataclasses
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Callable, Mapping, Sequence

from .maps import (
    AffineMapSpec,
    Elementary,
    HenonStep,
    MapError,
    det,
    permutation,
)
from .parse import parse_map, parse_poly
from .poly import Poly, jacobian_determinant

__all__ = [
    "ZooError",
    "ZooEntry",
    "CATALOG",
    "get",
    "tec1_f",
    "tec4_g",
    "tec4_h",
    "prop_ex_automorphism",
    "bir_F",
    "bir_G",
    "henon_word",
    "diller_favre_phi",
    "psi_k",
    "monomial_entry",
    "monomial_degree",
    "matrix_power",
    "shear",
]


class ZooError(ValueError):
    pass


# -- building blocks ------------------------------------------------------------


def shear(k: int, target: int, poly: Poly) -> list:
    """Generator word for ``z_target -> z_target + poly`` with ``poly`` free of ``z_target``.

    The shear is conjugated to an elementary map in ``z0`` by the
    transposition of ``z0`` and ``z_target``.
    """
    if target in poly.variables():
        raise ZooError(f"shear polynomial must not involve z{target}")
    if target == 0 and all(v > 0 for v in poly.variables()):
        return [Elementary(k, 0, poly)]
    perm = list(range(k))
    perm[0], perm[target] = perm[target], perm[0]
    swap = permutation(perm)
    swapped = poly.substitute([Poly.var(k, perm[i]) for i in range(k)])
    return [swap, Elementary(k, 0, swapped), swap]


def _with(spec: AffineMapSpec, **kw) -> AffineMapSpec:
    return dataclasses.replace(spec, **kw)


def _affine(text: str, name: str, inverse: str | None = None, nvars: int | None = None) -> AffineMapSpec:
    spec = parse_map(text, nvars)
    inv = None
    if inverse is not None:
        inv = _with(parse_map(inverse, nvars), name=f"{name}^-1")
    return _with(spec, name=name, declared_inverse=inv)


# -- triangular automorphisms -----------------------------------------------------


def _require(cond: bool, msg: str) -> None:
    if not cond:
        raise ZooError(msg)


def tec1_f(d: int = 1) -> AffineMapSpec:
    """``(z1 + z0*z2^d, z0, z2)`` on C^3, as a permutation followed by one elementary map."""
    _require(isinstance(d, int) and d >= 1, "tec1 needs an integer d >= 1")
    word = [permutation((1, 0, 2)), Elementary(3, 0, parse_poly(f"z1*z2^{d}", 3))]
    return AffineMapSpec.from_word(word, 3, name=f"tec1_f(d={d})")


def _block_word(exponents: Sequence[int]) -> tuple[int, list]:
    """Word for the chained-block automorphism of C^(2k+1), ``k = len(exponents)``.

    Block 0 is ``(z1 + z0*z2^e0, z0, z2)``.  Block ``j >= 1`` occupies
    coordinates ``2j+1, 2j+2`` and maps them to
    ``(z_{2j+2} + z_prev^e_j * z_{2j+1}, z_{2j+1})`` where ``z_prev`` is the
    first coordinate of the previous block (``z0`` for ``j = 1``).
    """
    k = len(exponents)
    n = 2 * k + 1
    perm = list(range(n))
    perm[0], perm[1] = 1, 0
    for j in range(1, k):
        a, b = 2 * j + 1, 2 * j + 2
        perm[a], perm[b] = b, a
    word: list = [permutation(perm)]
    # after the permutation, w_a holds z_b and w_b holds z_a for each block
    word += shear(n, 0, parse_poly(f"z1*z2^{exponents[0]}", n))
    for j in range(1, k):
        a, b = 2 * j + 1, 2 * j + 2
        # z_prev sits in the second slot of the previous block after the permutation
        prev_now = 1 if j == 1 else 2 * j
        word += shear(n, a, parse_poly(f"z{prev_now}^{exponents[j]}*z{b}", n))
    return n, word


def prop_ex_automorphism(k: int = 2, e: Sequence[int] | None = None) -> AffineMapSpec:
    """Chained-block automorphism of C^(2k+1) with non-decreasing exponents ``e``."""
    _require(isinstance(k, int) and k >= 1, "need k >= 1 blocks")
    e = tuple(e) if e is not None else (1,) * k
    _require(len(e) == k, f"need {k} exponents, got {len(e)}")
    _require(all(isinstance(x, int) and x >= 1 for x in e), "exponents must be positive integers")
    _require(all(a <= b for a, b in zip(e, e[1:])), "exponents must be non-decreasing")
    n, word = _block_word(e)
    return AffineMapSpec.from_word(word, n, name=f"prop_ex(k={k}, e={','.join(map(str, e))})")


def tec4_g(p: int = 1, d: int = 1) -> AffineMapSpec:
    _require(p >= d >= 1, "tec4_g needs p >= d >= 1")
    spec = prop_ex_automorphism(2, (d, p))
    return _with(spec, name=f"tec4_g(p={p}, d={d})")


def tec4_h(l: int = 1, p: int = 1, d: int = 1) -> AffineMapSpec:  # noqa: E741
    _require(l >= p >= d >= 1, "tec4_h needs l >= p >= d >= 1")
    spec = prop_ex_automorphism(3, (d, p, l))
    return _with(spec, name=f"tec4_h(l={l}, p={p}, d={d})")


def _g_degree(n: int, p: int, d: int) -> Fraction:
    return Fraction(p * d, 2) * n * n + Fraction(p * (2 - d), 2) * n + 1


def _h_degree(n: int, l: int, p: int, d: int) -> Fraction:  # noqa: E741
    return (
        1
        + l * (1 - Fraction(p, 2) + Fraction(p * d, 3)) * n
        + Fraction(l * p * (1 - d), 2) * n**2
        + Fraction(l * p * d, 6) * n**3
    )


def _G_degree(n: int, l: int, p: int, d: int) -> Fraction:  # noqa: E741
    return (
        Fraction(l * p * d, 6) * n**3
        + (1 - Fraction(3 * d, 4)) * l * p * n**2
        + (Fraction(13, 12) * p * d - 2 * p + 1) * l * n
        - Fraction(l * p * d, 2)
        + l * p
        + 1
    )


# -- birational maps ------------------------------------------------------------


def bir_F(p: int = 1, d: int = 1) -> AffineMapSpec:
    _require(p >= d >= 1, "bir_F needs p >= d >= 1")
    return _affine(
        f"(z1 + z0*z2^{d}, z0, z2, z0^{p}*z3)",
        f"bir_F(p={p}, d={d})",
        inverse=f"(z1, z0 - z1*z2^{d}, z2, z3/z1^{p})",
    )


def bir_G(l: int = 1, p: int = 1, d: int = 1) -> AffineMapSpec:  # noqa: E741
    _require(p >= d >= 1 and l >= 1, "bir_G needs p >= d >= 1 and l >= 1")
    return _affine(
        f"(z1 + z0*z2^{d}, z0, z2, z0^{p}*z3, z3^{l}*z4)",
        f"bir_G(l={l}, p={p}, d={d})",
        inverse=f"(z1, z0 - z1*z2^{d}, z2, z3/z1^{p}, z4*z1^{p * l}/z3^{l})",
    )


def diller_favre_phi() -> AffineMapSpec:
    return _affine(
        "(z1 + 2/3, z0*(z1 - 1/3)/(z1 + 1))",
        "diller_favre_phi",
        inverse="(z1*(z0 + 1/3)/(z0 - 1), z0 - 2/3)",
    )


def psi_k(k: int = 3) -> AffineMapSpec:
    """The quadratic plane map phi extended by a chain of products on C^k.

    Component 2 is ``z0*z2`` and component ``j >= 3`` is ``z_{j-1}*z_j``.
    """
    _require(isinstance(k, int) and k >= 3, "psi_k needs k >= 3")
    comps = ["z1 + 2/3", "z0*(z1 - 1/3)/(z1 + 1)", "z0*z2"] + [f"z{j - 1}*z{j}" for j in range(3, k)]
    inv = ["z1*(z0 + 1/3)/(z0 - 1)", "z0 - 2/3"]
    prev = inv[0]
    for j in range(2, k):
        cur = f"z{j}/({prev})"
        inv.append(cur)
        prev = cur
    return _affine("(" + ", ".join(comps) + ")", f"psi_{k}", inverse="(" + ", ".join(inv) + ")")


# -- Henon words ----------------------------------------------------------------


def _parse_steps(text: str) -> list[tuple[Poly, Fraction]]:
    steps = []
    for chunk in text.split(";"):
        chunk = chunk.strip()
        if not chunk:
            continue
        poly_text, _, delta_text = chunk.partition(":")
        delta = Fraction(delta_text.strip() or "1")
        steps.append((parse_poly(poly_text, 1), delta))
    return steps


def henon_word(steps: Sequence[tuple[Poly, Any]] | str = "z0^2:1") -> AffineMapSpec:
    """Composition of Henon steps ``(z0, z1) -> (z1, P_i(z1) - delta_i*z0)``; the first step acts first."""
    if isinstance(steps, str):
        steps = _parse_steps(steps)
    _require(len(steps) >= 1, "need at least one Henon step")
    try:
        word = [HenonStep(P, delta) for P, delta in steps]
    except MapError as exc:
        raise ZooError(str(exc)) from exc
    label = "; ".join(f"{P.render()}:{delta}" for P, delta in steps)
    return AffineMapSpec.from_word(word, 2, name=f"henon_word({label})")


def _henon_product(params: Mapping) -> int:
    steps = params["steps"]
    if isinstance(steps, str):
        steps = _parse_steps(steps)
    out = 1
    for P, _ in steps:
        out *= P.total_degree()
    return out


# -- monomial maps --------------------------------------------------------------


def _parse_matrix(text: str) -> tuple[tuple[int, ...], ...]:
    return tuple(tuple(int(x) for x in row.split(",")) for row in text.split(";"))


def matrix_power(A: Sequence[Sequence[int]], n: int) -> list[list[int]]:
    k = len(A)
    out = [[int(i == j) for j in range(k)] for i in range(k)]
    for _ in range(n):
        out = [[sum(out[i][m] * A[m][j] for m in range(k)) for j in range(k)] for i in range(k)]
    return out


def monomial_degree(B: Sequence[Sequence[int]]) -> int:
    """Degree of the monomial map ``z -> z^B`` read off the integer matrix.

    Clearing the denominators of ``z^{b_i}`` multiplies by ``z^neg`` where
    ``neg_j`` is the largest negative part in column ``j``.  No common factor
    survives, so the degree is the largest total exponent after clearing.
    """
    k = len(B)
    neg = [max(0, max(-B[i][j] for i in range(k))) for j in range(k)]
    return max(sum(neg), max(sum(B[i][j] + neg[j] for j in range(k)) for i in range(k)))


def monomial_entry(A: Sequence[Sequence[int]] | str = "1,1;1,0") -> AffineMapSpec:
    if isinstance(A, str):
        A = _parse_matrix(A)
    A = tuple(tuple(int(x) for x in row) for row in A)
    k = len(A)
    _require(k >= 1 and all(len(r) == k for r in A), "matrix must be square")
    dA = det(A)
    _require(dA != 0, "singular matrix")
    spec = _monomial_spec(A)
    inv = None
    if abs(dA) == 1:
        from .maps import _mat_inverse

        Ainv = tuple(tuple(int(x) for x in row) for row in _mat_inverse(A))
        inv = _monomial_spec(Ainv)
    label = ";".join(",".join(map(str, r)) for r in A)
    return _with(spec, name=f"monomial({label})", declared_inverse=inv)


def _monomial_spec(A) -> AffineMapSpec:
    pairs = []
    for row in A:
        num = [max(e, 0) for e in row]
        den = [max(-e, 0) for e in row]
        pairs.append((Poly.monomial(num), Poly.monomial(den)))
    return AffineMapSpec.rational(pairs)


# -- the catalog ----------------------------------------------------------------


def _as_int(v) -> int:
    return int(v)


def _as_tuple(v) -> tuple[int, ...]:
    if isinstance(v, str):
        return tuple(int(x) for x in v.split(","))
    return tuple(int(x) for x in v)


@dataclass(frozen=True)
class ZooEntry:
    """A catalog entry.

    ``expected_degree(n, params)`` returns the closed-form degree of the
    ``n``-th iterate.  With ``mode="report"`` the formula is shown next to
    the computed degrees instead of being asserted.
    """

    name: str
    builder: Callable[..., AffineMapSpec]
    citation: str
    formula: str
    kind: str  # "automorphism" or "birational"
    default_params: Mapping[str, Any] = field(default_factory=dict)
    param_types: Mapping[str, Callable[[Any], Any]] = field(default_factory=dict)
    expected_degree: Callable[[int, Mapping], Any] | None = None
    expected_inverse_degree: Callable[[int, Mapping], Any] | None = None
    inverse_formula: str = ""
    horizon_hint: int = 8
    mode: str = "assert"
    verify_params: tuple[Mapping[str, Any], ...] = ()

    def params(self, overrides: Mapping[str, Any] | None = None) -> dict:
        out = dict(self.default_params)
        for key, value in (overrides or {}).items():
            if key not in self.default_params:
                raise ZooError(f"{self.name} has no parameter {key!r}; known: {sorted(self.default_params)}")
            conv = self.param_types.get(key, _as_int)
            try:
                out[key] = conv(value) if isinstance(value, str) else value
            except ValueError as exc:
                raise ZooError(f"bad value for {key}: {value!r}") from exc
        return out

    def build(self, overrides: Mapping[str, Any] | None = None) -> AffineMapSpec:
        params = self.params(overrides)
        spec = self.builder(**params)
        if self.expected_degree is not None and self.mode == "assert":
            want = self.expected_degree(1, params)
            got = spec.projective.degree
            if want != got:
                raise ZooError(f"{self.name}: closed form gives degree {want} at n=1, built map has {got}")
        return spec

    def expected(self, n: int, params: Mapping) -> Any:
        return None if self.expected_degree is None else self.expected_degree(n, params)

    def expected_inverse(self, n: int, params: Mapping) -> Any:
        return None if self.expected_inverse_degree is None else self.expected_inverse_degree(n, params)

    def to_dict(self, params: Mapping | None = None) -> dict:
        params = self.params(params)
        return {
            "name": self.name,
            "kind": self.kind,
            "dimension": self.builder(**params).k,
            "parameters": {k: _jsonable(v) for k, v in params.items()},
            "citation": self.citation,
            "formula": self.formula,
            "inverse_formula": self.inverse_formula,
            "mode": self.mode,
            "horizon_hint": self.horizon_hint,
        }


def _jsonable(v):
    if isinstance(v, (tuple, list)):
        return [_jsonable(x) for x in v]
    if isinstance(v, Fraction):
        return str(v)
    return v


def _fixed(name: str, text: str, inverse: str | None = None) -> Callable[[], AffineMapSpec]:
    def build() -> AffineMapSpec:
        return _affine(text, name, inverse)

    build.__name__ = name
    return build


_P1 = "(z2, (z2^2 + z0)^2 + z2^2 + z0 + z1, z2^2 + z0)"
_P1_INV = "(z2 - z0^2, z1 - z2^2 - z2, z0)"
_P2F = "(z0^2 + z1, z0, z2 + 1)"
_P2F_INV = "(z1, z0 - z1^2, z2 - 1)"
_P2G = "(z1^2 + z0*z1 + z2, z1 + 1, z0)"
_P2G_INV = "(z2, z1 - 1, z0 - (z1 - 1)^2 - z2*(z1 - 1))"
_P3F = "(z0 + z1 + z2, z0^2 + z0 + z1, z0)"
_P3F_INV = "(z2, z1 - z2^2 - z2, z0 - z1 + z2^2)"
_P3G = "(z1^2 + z0 + z1 + z2, z1, z0)"
_P3G_INV = "(z2, z1, z0 - z1^2 - z1 - z2)"
_P4 = "(z1^2 + z5, z5^2 + z4, z2, z1, z0, z4^2 + z3)"
# z5 = w0 - w3^2, z4 = w1 - z5^2, z3 = w5 - z4^2
_P4_INV = (
    "(z4, z3, z2, z5 - (z1 - (z0 - z3^2)^2)^2, z1 - (z0 - z3^2)^2, z0 - z3^2)"
)
_RS = "(5*z0^2 + z2^2 + 6*z0*z2 + z1, z2^2 + z0, z2)"
_RS_INV = "(z1 - z2^2, z0 - 5*(z1 - z2^2)^2 - z2^2 - 6*(z1 - z2^2)*z2, z2)"
_RB = "(z0^2 + z1 + z2, z0^2 + z1, z0)"
_RB_INV = "(z2, z1 - z2^2, z0 - z1)"


def _entries() -> list[ZooEntry]:
    tup = {"e": _as_tuple}
    return [
        ZooEntry(
            "tec1",
            tec1_f,
            "shear composed with a swap, linear growth",
            "deg f^n = d*n + 1",
            "automorphism",
            {"d": 1},
            expected_degree=lambda n, q: q["d"] * n + 1,
            expected_inverse_degree=lambda n, q: q["d"] * n + 1,
            inverse_formula="deg f^-n = d*n + 1",
            horizon_hint=10,
            verify_params=({"d": 1}, {"d": 2}, {"d": 3}, {"d": 5}),
        ),
        ZooEntry(
            "tec4_g",
            tec4_g,
            "two-block triangular automorphism, quadratic growth",
            "deg g^n = p*d/2*n^2 + p*(2-d)/2*n + 1",
            "automorphism",
            {"p": 1, "d": 1},
            expected_degree=lambda n, q: _g_degree(n, q["p"], q["d"]),
            expected_inverse_degree=lambda n, q: _g_degree(n, q["p"], q["d"]),
            inverse_formula="deg g^-n = deg g^n",
            horizon_hint=8,
            verify_params=({"p": 1, "d": 1}, {"p": 2, "d": 1}, {"p": 2, "d": 2}, {"p": 3, "d": 2}),
        ),
        ZooEntry(
            "tec4_h",
            tec4_h,
            "three-block triangular automorphism, cubic growth",
            "deg h^n = 1 + l*(1 - p/2 + p*d/3)*n + l*p*(1-d)/2*n^2 + l*p*d/6*n^3",
            "automorphism",
            {"l": 1, "p": 1, "d": 1},
            expected_degree=lambda n, q: _h_degree(n, q["l"], q["p"], q["d"]),
            expected_inverse_degree=lambda n, q: _h_degree(n, q["l"], q["p"], q["d"]),
            inverse_formula="deg h^-n = deg h^n",
            horizon_hint=6,
            verify_params=({"l": 1, "p": 1, "d": 1}, {"l": 2, "p": 1, "d": 1}, {"l": 2, "p": 2, "d": 1}),
        ),
        ZooEntry(
            "prop_ex",
            prop_ex_automorphism,
            "k-block triangular automorphism, growth n^k",
            "deg f^n ~ n^k (growth exponent only)",
            "automorphism",
            {"k": 2, "e": (1, 1)},
            param_types=tup,
            horizon_hint=10,
        ),
        ZooEntry(
            "bir_F",
            bir_F,
            "birational two-block map",
            "deg F^n = p*d/2*n^2 + p*(2-d)/2*n + 1",
            "birational",
            {"p": 1, "d": 1},
            expected_degree=lambda n, q: _g_degree(n, q["p"], q["d"]),
            horizon_hint=6,
            verify_params=({"p": 1, "d": 1}, {"p": 2, "d": 1}),
        ),
        ZooEntry(
            "bir_G",
            bir_G,
            "birational three-block map",
            "deg G^n = l*p*d/6*n^3 + (1 - 3d/4)*l*p*n^2 + (13/12*p*d - 2p + 1)*l*n - l*p*d/2 + l*p + 1",
            "birational",
            {"l": 1, "p": 1, "d": 1},
            expected_degree=lambda n, q: _G_degree(n, q["l"], q["p"], q["d"]),
            horizon_hint=5,
            mode="report",
        ),
        ZooEntry(
            "p1_f",
            _fixed("p1_f", _P1, _P1_INV),
            "exponential growth, not algebraically stable",
            "deg f^n = 2^(n+1)",
            "automorphism",
            expected_degree=lambda n, q: 2 ** (n + 1),
            horizon_hint=6,
        ),
        ZooEntry(
            "p2_f",
            _fixed("p2_f", _P2F, _P2F_INV),
            "Henon-type map, exponential growth",
            "deg f^n = 2^n",
            "automorphism",
            expected_degree=lambda n, q: 2**n,
            horizon_hint=6,
        ),
        ZooEntry(
            "p2_g",
            _fixed("p2_g", _P2G, _P2G_INV),
            "linear growth companion",
            "deg g^n = n + 1",
            "automorphism",
            expected_degree=lambda n, q: n + 1,
            horizon_hint=8,
        ),
        ZooEntry(
            "p3_f",
            _fixed("p3_f", _P3F, _P3F_INV),
            "period-two stuttering growth",
            "deg f^(2n) = deg f^(2n+1) = 2^(n+1)",
            "automorphism",
            expected_degree=lambda n, q: 2 ** (n // 2 + 1),
            expected_inverse_degree=lambda n, q: 2**n,
            inverse_formula="deg f^-n = 2^n",
            horizon_hint=6,
        ),
        ZooEntry(
            "p3_g",
            _fixed("p3_g", _P3G, _P3G_INV),
            "bounded degree",
            "deg g^n = 2",
            "automorphism",
            expected_degree=lambda n, q: 2,
            expected_inverse_degree=lambda n, q: 2,
            inverse_formula="deg g^-n = 2",
            horizon_hint=8,
        ),
        ZooEntry(
            "p4_f",
            _fixed("p4_f", _P4, _P4_INV),
            "six-dimensional example with a degree plateau",
            "degrees 2, 4, 8, 8",
            "automorphism",
            expected_degree=lambda n, q: (2, 4, 8, 8)[n - 1] if n <= 4 else None,
            horizon_hint=4,
        ),
        ZooEntry(
            "remark_stability",
            _fixed("remark_stability", _RS, _RS_INV),
            "stable after a linear change of variables",
            "deg f^n = 2^n",
            "automorphism",
            expected_degree=lambda n, q: 2**n,
            horizon_hint=6,
        ),
        ZooEntry(
            "remark_bidegree",
            _fixed("remark_bidegree", _RB, _RB_INV),
            "different forward and backward growth",
            "deg f^n = 2^n",
            "automorphism",
            expected_degree=lambda n, q: 2**n,
            expected_inverse_degree=lambda n, q: 2 ** ((n + 1) // 2),
            inverse_formula="deg f^-n = 2^[(n+1)/2]",
            horizon_hint=8,
        ),
        ZooEntry(
            "henon",
            henon_word,
            "generalized Henon composition",
            "deg f^n = (prod deg P_i)^n",
            "automorphism",
            {"steps": "z0^2:1"},
            param_types={"steps": str},
            expected_degree=lambda n, q: _henon_product(q) ** n,
            expected_inverse_degree=lambda n, q: _henon_product(q) ** n,
            inverse_formula="deg f^-n = (prod deg P_i)^n",
            horizon_hint=5,
        ),
        ZooEntry(
            "diller_favre_phi",
            diller_favre_phi,
            "quadratic birational map of the plane with quasi-polynomial growth",
            "deg phi^n = s_(n-1) + s_n + 1, growth n^2",
            "birational",
            horizon_hint=10,
        ),
        ZooEntry(
            "psi_k",
            psi_k,
            "birational map with growth n^k",
            "deg Psi_k^n ~ n^k",
            "birational",
            {"k": 3},
            horizon_hint=9,
        ),
        ZooEntry(
            "monomial",
            monomial_entry,
            "monomial map given by an integer matrix",
            "deg phi_A^n from the entries of A^n",
            "birational",
            {"A": "1,1;1,0"},
            param_types={"A": str},
            expected_degree=lambda n, q: monomial_degree(matrix_power(_parse_matrix(q["A"]) if isinstance(q["A"], str) else q["A"], n)),
            horizon_hint=12,
        ),
    ]


CATALOG: dict[str, ZooEntry] = {e.name: e for e in _entries()}
_ALIASES = {"tec1_f": "tec1", "prop_ex_automorphism": "prop_ex", "henon_word": "henon", "phi": "diller_favre_phi"}


def get(name: str) -> ZooEntry:
    key = _ALIASES.get(name, name)
    try:
        return CATALOG[key]
    except KeyError:
        raise ZooError(f"unknown zoo entry {name!r}; known: {', '.join(CATALOG)}") from None


def jacobian_is_constant(spec: AffineMapSpec) -> bool:
    """Sanity check for automorphisms: the Jacobian determinant is a nonzero constant."""
    jd = jacobian_determinant(spec.polys())
    return jd.is_constant() and not jd.is_zero()
