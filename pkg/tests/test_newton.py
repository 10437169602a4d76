import math
import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from generators import random_cover_profile
from oracles import brieskorn_lefschetz
from singres import corpus
from singres.errors import Degenerate, NonzeroConstantTerm, NotConvenient, ParseError, ZeroPolynomial
from singres.invariants import lct, lefschetz, multiplicity
from singres.model import validate
from singres.newton import (
    cover_components_oracle,
    fan_subdivision,
    lct_weighted_homogeneous,
    newton_polygon,
    nondegeneracy_check,
    parse_poly,
    resolution_from_curve,
)


def signature(r):
    return sorted((d.ord, d.discrepancy, d.euler_open, d.cover_betti) for d in r.exceptional)


def test_parse_terms():
    f = parse_poly("3/2*x^2*y - x y^4 + 2y^5")
    assert f.terms == {(2, 1): Fraction(3, 2), (1, 4): Fraction(-1), (0, 5): Fraction(2)}
    assert parse_poly("x^2+y^3-x^2").terms == {(0, 3): Fraction(1)}


@pytest.mark.parametrize("text", ["x^", "x+", "x^2+z", "x^2**y", "3/0*x", ""])
def test_parse_errors(text):
    with pytest.raises(ParseError):
        parse_poly(text)


def test_parse_special_values():
    with pytest.raises(ZeroPolynomial):
        parse_poly("x^2-x^2")
    with pytest.raises(NonzeroConstantTerm):
        parse_poly("1+x^2")


def test_cusp_matches_hand_corpus():
    r = resolution_from_curve(parse_poly("x^2+y^3"))
    assert validate(r) == []
    assert signature(r) == signature(corpus.load("cusp"))
    degrees = sorted(len(r.neighbors(d.id)) for d in r.exceptional)
    assert degrees == sorted(len(corpus.load("cusp").neighbors(d.id)) for d in corpus.load("cusp").exceptional)


def test_node_and_tacnode_match_corpus():
    assert signature(resolution_from_curve(parse_poly("x^2-y^2"))) == signature(corpus.load("node"))
    assert signature(resolution_from_curve(parse_poly("x^2-y^4"))) == signature(corpus.load("tacnode"))
    assert signature(resolution_from_curve(parse_poly("x^3+y^3"))) == signature(corpus.load("triple_point"))


def test_degenerate_and_nonconvenient():
    with pytest.raises(Degenerate, match="degenerate edge"):
        resolution_from_curve(parse_poly("x^2+2*x*y+y^2+x^5"))
    with pytest.raises(NotConvenient):
        resolution_from_curve(parse_poly("x^2*y+y^3"))
    report = nondegeneracy_check(parse_poly("x^2+2*x*y+y^2+x^5"))
    assert not report.ok and len(report.failing()) == 1


def test_newton_polygon_edges():
    poly = newton_polygon(parse_poly("x^4+x^2*y+y^3"))
    assert poly.convenient
    assert [(e.start, e.end) for e in poly.edges] == [((4, 0), (2, 1)), ((2, 1), (0, 3))]
    assert [e.normal for e in poly.edges] == [(1, 2), (1, 1)]


@pytest.mark.parametrize("a,b", [(a, b) for a in range(2, 8) for b in range(2, 8)])
def test_brieskorn(a, b):
    r = resolution_from_curve(parse_poly(f"x^{a}+y^{b}"))
    assert validate(r) == []
    assert multiplicity(r) == min(a, b)
    assert lct(r) == lct_weighted_homogeneous((b, a), a * b) == min(Fraction(1), Fraction(1, a) + Fraction(1, b))
    for m in range(1, 2 * a * b + 1):
        assert lefschetz(r, m) == brieskorn_lefschetz(a, b, m)
    for d in r.exceptional:
        assert sum((-1) ** k * x for k, x in enumerate(d.cover_betti)) == d.ord * d.euler_open


def random_convenient(rng):
    """Sum of monomials on a random staircase with generic coefficients."""
    a0, b0 = rng.randint(2, 9), rng.randint(2, 9)
    terms = [f"{rng.choice([1, 2, 3, 5, 7])}*x^{a0}", f"{rng.choice([1, 2, 3, 5, 7])}*y^{b0}"]
    for _ in range(rng.randint(0, 3)):
        i, j = rng.randint(1, a0), rng.randint(1, b0)
        terms.append(f"{rng.choice([-3, -1, 1, 2, 11])}*x^{i}*y^{j}")
    return "+".join(terms).replace("+-", "-")


@settings(max_examples=120, deadline=None)
@given(st.integers(0, 10**6))
def test_random_curves(seed):
    f = parse_poly(random_convenient(random.Random(seed)))
    if not nondegeneracy_check(f).ok:
        return
    r = resolution_from_curve(f)
    assert validate(r) == []
    support = f.support()
    assert multiplicity(r) == min(a + b for a, b in support)
    fan = fan_subdivision(newton_polygon(f))
    assert (1, 1) in fan.rays
    rays = fan.rays
    for prev, ray, nxt in zip(rays, rays[1:], rays[2:]):
        # Hirzebruch-Jung relation; rays that are not edge normals have self-intersection <= -2
        total = (prev[0] + nxt[0], prev[1] + nxt[1])
        b = total[0] // ray[0] if ray[0] else total[1] // ray[1]
        assert total == (b * ray[0], b * ray[1])
        if ray not in fan.edge_normals:
            assert b >= 2
    for d in r.exceptional:
        assert sum((-1) ** k * x for k, x in enumerate(d.cover_betti)) == d.ord * d.euler_open
        adjacent = [r.divisor(o).ord for o, _ in r.neighbors(d.id)]
        assert d.cover_components == cover_components_oracle(d.ord, adjacent)


def test_cover_oracle_profiles():
    rng = random.Random(0)
    for _ in range(200):
        order, adjacent = random_cover_profile(rng)
        assert cover_components_oracle(order, adjacent) == math.gcd(order, *adjacent)
