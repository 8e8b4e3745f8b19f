"""Randomized laws for the algebra, the maps and the classifier."""

from fractions import Fraction

import pytest
from hypothesis import HealthCheck, assume, given, settings, strategies as st

from degrowth import zoo
from degrowth.dynamics import WINDOW, classify_growth, degree_sequence, normalize_point
from degrowth.gcd import gcd, lcm
from degrowth.maps import compose, inverse, iterate, monomial_map
from degrowth.parse import parse_map
from degrowth.poly import Poly, divide_exact

NV = 3


@st.composite
def polys(draw, nvars=NV, max_deg=3, max_terms=4):
    n = draw(st.integers(1, max_terms))
    terms = {}
    for _ in range(n):
        mono = tuple(draw(st.lists(st.integers(0, max_deg), min_size=nvars, max_size=nvars)))
        terms[mono] = draw(st.integers(-5, 5).filter(bool))
    p = Poly(nvars, terms)
    assume(not p.is_zero())
    return p


def associate(a: Poly, b: Poly) -> bool:
    q = divide_exact(a, b)
    return q is not None and q.is_constant() and not q.is_zero()


class TestGcdLaws:
    @settings(max_examples=500, deadline=None, suppress_health_check=[HealthCheck.too_slow])
    @given(polys(), polys(), polys())
    def test_divisibility_and_product(self, a, b, c):
        g = gcd(a * c, b * c)
        # g divides both inputs
        assert divide_exact(a * c, g) is not None
        assert divide_exact(b * c, g) is not None
        # the common factor is found: gcd(ac, bc) = c * gcd(a, b) up to a unit
        assert associate(g, c * gcd(a, b))

    @settings(max_examples=200, deadline=None)
    @given(polys(), polys())
    def test_gcd_times_lcm(self, a, b):
        assert associate(gcd(a, b) * lcm(a, b), a * b)

    @settings(max_examples=200, deadline=None)
    @given(polys(), polys())
    def test_symmetric_and_normalized(self, a, b):
        g = gcd(a, b)
        assert g == gcd(b, a)
        assert g.leading_coefficient() > 0
        assert g.integer_content() == 1


class TestPolyLaws:
    @settings(max_examples=200, deadline=None)
    @given(polys(), polys(), polys())
    def test_ring_axioms(self, a, b, c):
        assert a * (b + c) == a * b + a * c
        assert (a * b) * c == a * (b * c)
        assert a - a == Poly.zero(NV)

    @settings(max_examples=200, deadline=None)
    @given(polys(), polys())
    def test_degree_of_product(self, a, b):
        assert (a * b).total_degree() == a.total_degree() + b.total_degree()

    @settings(max_examples=200, deadline=None)
    @given(polys(), st.integers(0, 2))
    def test_homogenize_round_trip(self, p, extra):
        d = p.total_degree() + extra
        h = p.homogenize(d)
        assert h.is_homogeneous() and h.total_degree() == d
        assert h.dehomogenize() == p

    @settings(max_examples=200, deadline=None)
    @given(polys(), st.lists(st.integers(-4, 4), min_size=NV, max_size=NV), polys(), polys(), polys())
    def test_substitute_commutes_with_evaluate(self, p, pt, q0, q1, q2):
        images = [q0, q1, q2]
        lhs = p.substitute(images).evaluate(pt)
        rhs = p.evaluate([q.evaluate(pt) for q in images])
        assert lhs == rhs

    @settings(max_examples=200, deadline=None)
    @given(polys())
    def test_render_parse_round_trip(self, p):
        from degrowth.parse import parse_poly

        assert parse_poly(p.render(), NV) == p


def _dimension_groups():
    groups: dict[int, list] = {}
    variants = [(name, {}) for name in zoo.CATALOG]
    variants += [("tec1", {"d": d}) for d in (2, 3, 5)]
    variants += [("henon", {"steps": "z0^3 - z0:2"}), ("monomial", {"A": "2,1;1,1"}), ("monomial", {"A": "1,2;0,1"})]
    for name, params in variants:
        spec = zoo.get(name).build(params)
        groups.setdefault(spec.k, []).append((f"{name}{params or ''}", spec))
    return {k: v for k, v in groups.items() if len(v) >= 2}


GROUPS = _dimension_groups()
PAIRS = [(a, b) for specs in GROUPS.values() for a in specs for b in specs]


class TestMapLaws:
    @settings(max_examples=200, deadline=None)
    @given(st.sampled_from(PAIRS))
    def test_compose_degree_submultiplicative(self, pair):
        (_, g), (_, f) = pair
        assert compose(g.projective, f.projective).degree <= g.projective.degree * f.projective.degree

    @pytest.mark.parametrize("name", [n for n in zoo.CATALOG])
    def test_inverse_round_trip(self, name):
        spec = zoo.get(name).build()
        inv = inverse(spec)
        assert compose(spec.projective, inv.projective).is_identity()
        assert compose(inv.projective, spec.projective).is_identity()

    @pytest.mark.parametrize("name", [n for n in zoo.CATALOG])
    def test_parser_round_trip_on_catalog(self, name):
        spec = zoo.get(name).build()
        again = parse_map(spec.render(), spec.k)
        assert again.components == spec.components
        proj = spec.projective
        assert parse_map(proj.render(), proj.nvars) == proj

    @pytest.mark.parametrize(
        "name", [n for n, e in zoo.CATALOG.items() if e.kind == "automorphism"]
    )
    def test_automorphisms_have_constant_jacobian(self, name):
        assert zoo.jacobian_is_constant(zoo.get(name).build())

    @settings(max_examples=30, deadline=None)
    @given(
        st.lists(st.lists(st.integers(-2, 2), min_size=2, max_size=2), min_size=2, max_size=2).filter(
            lambda A: A[0][0] * A[1][1] - A[0][1] * A[1][0] != 0
        ),
        st.integers(1, 4),
    )
    def test_monomial_functoriality(self, A, n):
        its = iterate(monomial_map(A), n)
        assert its[-1] == monomial_map(zoo.matrix_power(A, n))
        assert its[-1].degree == zoo.monomial_degree(zoo.matrix_power(A, n))


@pytest.mark.parametrize("name", ["tec1", "tec4_g", "p2_g", "p3_g", "remark_bidegree", "henon"])
def test_forward_and_inverse_tags_agree(name):
    spec = zoo.get(name).build()
    N = 8
    method = "certified" if spec.kind == "polynomial" else "exact"
    fwd = classify_growth(degree_sequence(spec.projective, N, method=method))
    bwd = classify_growth(degree_sequence(inverse(spec).projective, N, method=method))
    assert fwd.tag == bwd.tag


@pytest.mark.parametrize("name", ["p1_f", "p2_f", "p3_f", "remark_stability", "tec4_g", "bir_F", "diller_favre_phi"])
def test_line_route_agrees_with_exact(name):
    m = zoo.get(name).build().projective
    assert degree_sequence(m, 5, method="line").degrees == degree_sequence(m, 5).degrees


class TestClassifierLaws:
    @settings(max_examples=200, deadline=None)
    @given(st.integers(1, 4), st.lists(st.integers(0, 6), min_size=5, max_size=5), st.integers(1, 5), st.integers(6, 14))
    def test_recovers_polynomials(self, ell, coeffs, lead, N):
        # the top difference must be seen constant over a full window
        assume(N >= ell + WINDOW)
        cs = coeffs[:ell] + [lead]
        seq = [sum(c * n**i for i, c in enumerate(cs)) + 1 for n in range(1, N + 1)]
        g = classify_growth(seq)
        assert (g.tag, g.ell) == ("Polynomial", ell)
        assert g.leading == Fraction(lead)

    @settings(max_examples=100, deadline=None)
    @given(st.integers(2, 5), st.integers(1, 4), st.integers(6, 12))
    def test_recovers_geometric(self, r, c, N):
        g = classify_growth([c * r**n for n in range(1, N + 1)])
        assert g.tag == "Exponential" and g.lam == pytest.approx(r)

    @settings(max_examples=100, deadline=None)
    @given(st.lists(st.integers(1, 50), min_size=6, max_size=12))
    def test_deterministic_and_total(self, seq):
        a, b = classify_growth(seq), classify_growth(list(seq))
        assert a == b
        assert a.tag in {"Bounded", "Polynomial", "Exponential", "Undetermined"}


@settings(max_examples=200, deadline=None)
@given(st.lists(st.fractions(min_value=-20, max_value=20, max_denominator=9), min_size=2, max_size=5))
def test_normalize_point_idempotent(coords):
    assume(any(coords))
    p = normalize_point(coords)
    assert normalize_point(p) == p
    assert normalize_point([c * -3 for c in coords]) == p
