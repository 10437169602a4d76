import random

import pytest
from hypothesis import given, settings, strategies as st

from generators import random_resolution
from singres import corpus
from singres.errors import OutOfScope, UnknownStratum
from singres.invariants import lct, lefschetz, md, md_plus, multiplicity
from singres.model import DivisorRecord, ResolutionData, validate
from singres.separating import blow_up_pair, is_separating, min_pair_sum, separate

CUSP = corpus.load("cusp")
NODE = corpus.load("node")


def test_min_pair_sum_cusp():
    report = min_pair_sum(CUSP)
    assert report.a_Y == 7
    assert report.b_Y == 1
    assert report.witnesses == (("E3", "star"),)


def test_cusp_separate_trace():
    result, trace = separate(CUSP, 8)
    assert [s.pair for s in trace.steps] == [("E3", "star"), ("E1", "E3"), ("X1", "star")]
    assert trace.steps[0].new_divisors == (("X1", 7, 5),)
    assert trace.steps[1].new_divisors == (("X2", 8, 6),)
    assert is_separating(result, 8)
    assert validate(result) == []
    assert separate(CUSP, 8)[1] == trace


def test_already_separating_is_noop():
    result, trace = separate(CUSP, 6)
    assert result == CUSP
    assert trace.steps == ()


def test_node_blows_both_components():
    blown = blow_up_pair(NODE, ("E1", "star"))
    new = [d for d in blown.exceptional if d.id != "E1"]
    assert [(d.ord, d.discrepancy) for d in new] == [(3, 2), (3, 2)]
    assert frozenset(("E1", "star")) not in blown.strata
    partial = blow_up_pair(NODE, ("E1", "star"), count=1)
    assert partial.strata[frozenset(("E1", "star"))] == 1


def test_new_divisor_cover_uses_gcd():
    blown = blow_up_pair(corpus.load("tacnode"), ("E1", "E2"))
    new = blown.divisor("X1")
    assert (new.ord, new.cover_components, new.cover_betti) == (6, 2, (2, 2))


def test_blowup_errors():
    with pytest.raises(UnknownStratum):
        blow_up_pair(CUSP, ("E1", "E2"))
    with pytest.raises(ValueError):
        blow_up_pair(NODE, ("E1", "star"), count=3)
    divs = (DivisorRecord("A", 1, 1), DivisorRecord("B", 1, 1), DivisorRecord("star", 1, 0, is_star=True))
    full = {frozenset(p): 1 for p in (("A", "B"), ("A", "star"), ("B", "star"))}
    full[frozenset(("A", "B", "star"))] = 1
    with pytest.raises(OutOfScope):
        blow_up_pair(ResolutionData(2, divs, full), ("A", "B"))
    with pytest.raises(ValueError):
        separate(CUSP, 0)


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 10**6), st.integers(1, 16))
def test_separate_terminates_and_validates(seed, m):
    r = random_resolution(random.Random(seed), n=1)
    result, trace = separate(r, m)
    assert is_separating(result, m)
    assert validate(result) == []
    assert len(result.divisors) == len(r.divisors) + sum(s.components for s in trace.steps)


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 10**6))
def test_blowup_invariants(seed):
    r = random_resolution(random.Random(seed), n=1)
    for pair in r.pairs():
        b = blow_up_pair(r, pair)
        assert lct(b) == lct(r)
        assert multiplicity(b) == multiplicity(r)
        for m in range(1, 13):
            assert md_plus(b, m) == md_plus(r, m)
            assert lefschetz(b, m) == lefschetz(r, m)
            # plain md can only grow: each witness through the blown-up pair
            # gains k_new * (|I| - 1) >= 0
            assert md(b, m)[0] >= md(r, m)[0]


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 10**6), st.integers(1, 12))
def test_md_invariant_on_separating_input(seed, m):
    r, _ = separate(random_resolution(random.Random(seed), n=1), m)
    for pair in r.pairs():
        assert md(blow_up_pair(r, pair), m)[0] == md(r, m)[0]
