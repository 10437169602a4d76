import cmath
import math
import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from generators import random_resolution
from oracles import cusp_lefschetz
from singres import corpus
from singres.errors import BoundExceeded, MissingData
from singres.invariants import (
    admissible_subsets,
    hf_euler,
    lct,
    lefschetz,
    lefschetz_from_zeta,
    md,
    md_bruteforce,
    md_plus,
    monodromy_zeta,
    multiplicity,
    s_m,
)
from singres.model import INF, DivisorRecord

CUSP = corpus.load("cusp")


def test_cusp_basics():
    assert multiplicity(CUSP) == 2
    assert lct(CUSP) == Fraction(5, 6)
    assert s_m(CUSP, 6) == {"E1", "E2", "E3"}
    assert s_m(CUSP, 5) == frozenset()


@pytest.mark.parametrize("m", range(1, 25))
def test_cusp_lefschetz_matches_companion_trace(m):
    assert lefschetz(CUSP, m) == cusp_lefschetz(m)


def test_cusp_lefschetz_from_roots_of_unity():
    for m in range(1, 13):
        roots = [cmath.exp(2j * math.pi * k / 6) for k in (1, 5)]
        assert lefschetz(CUSP, m) == round(1 - sum(z**m for z in roots).real)


def test_zeta_reproduces_lefschetz():
    for name in corpus.names():
        r = corpus.load(name)
        zeta = monodromy_zeta(r)
        for m in range(1, 25):
            assert lefschetz_from_zeta(zeta, m) == lefschetz(r, m)


def test_hf_euler_sign():
    a1 = corpus.load("a1_surface")
    assert hf_euler(a1, 2) == lefschetz(a1, 2) == 2
    assert hf_euler(CUSP, 6) == 1


def test_lefschetz_missing_euler():
    r = CUSP.with_divisors(
        DivisorRecord(d.id, d.ord, d.discrepancy, d.is_star) for d in CUSP.divisors
    )
    with pytest.raises(MissingData):
        lefschetz(r, 6)
    assert lefschetz(r, 5) == 0  # empty S_m needs no data


def test_cusp_md_table():
    assert [md(CUSP, m)[0] for m in range(1, 9)] == [INF, 1, 2, 2, INF, 3, 4, 4]
    assert [md(CUSP, m, "exclude-star")[0] for m in range(1, 9)] == [INF, 1, 2, 2, INF, 3, INF, 4]
    assert [md_plus(CUSP, m) for m in range(1, 7)] == [INF, 2, 3, 4, INF, 5]


def test_md_witness():
    value, witness = md(CUSP, 8)
    assert witness.value == value == 4
    assert sum(k * CUSP.divisor(i).ord for i, k in witness.coefficients.items()) == 8
    assert md(CUSP, 1) == (INF, None)


def test_star_alone_not_admissible():
    subsets = admissible_subsets(CUSP)
    assert frozenset(["star"]) not in subsets
    assert frozenset(("E3", "star")) in subsets
    assert frozenset(("E3", "star")) not in admissible_subsets(CUSP, "exclude-star")


def test_md_rejects_bad_input():
    with pytest.raises(ValueError):
        md(CUSP, 0)
    with pytest.raises(ValueError):
        md(CUSP, 2, "nope")
    with pytest.raises(BoundExceeded):
        md_bruteforce(CUSP, 65)


@settings(max_examples=80, deadline=None)
@given(st.integers(0, 10**6), st.integers(1, 30), st.sampled_from(["allow-mixed", "exclude-star"]))
def test_md_equals_bruteforce(seed, m, policy):
    r = random_resolution(random.Random(seed))
    assert md(r, m, policy)[0] == md_bruteforce(r, m, policy)
    assert md_plus(r, m) == md_bruteforce(r, m, log_discrepancy=True)


@settings(max_examples=80, deadline=None)
@given(st.integers(0, 10**6))
def test_lct_and_md_plus_bounds(seed):
    r = random_resolution(random.Random(seed))
    assert 0 < lct(r) <= 1
    for m in range(1, 16):
        value = md_plus(r, m)
        if value != INF:
            # every witness has sum k (a+1) >= lct * sum k ord
            assert value >= lct(r) * m
        plain = md(r, m)[0]
        assert plain <= value


@settings(max_examples=50, deadline=None)
@given(st.integers(0, 10**6))
def test_md_is_subadditive_on_singletons(seed):
    # k E_i is a witness whenever ord_i divides m
    r = random_resolution(random.Random(seed))
    for m in range(1, 16):
        for i in s_m(r, m):
            d = r.divisor(i)
            assert md(r, m)[0] <= (m // d.ord) * d.discrepancy
