import json
import random

import pytest
from hypothesis import given, settings, strategies as st

from generators import random_collapse_instance, random_filtered_complex, random_matrix
from oracles import associated_graded_ranks, determinant_divisors
from singres.errors import HypothesisFailed, InvalidFiltration, NotAComplex, TruncationTooSmall
from singres.homalg import (
    ChainComplex,
    CollapseInstance,
    FilteredComplex,
    collapse_check,
    complex_from_json,
    complex_to_json,
    determinant,
    filtration_pages,
    homology,
    int_matrix,
    limit_page,
    matmul,
    smith_normal_form,
)


def check_snf(a):
    d, u, v = smith_normal_form(a)
    assert (matmul(matmul(u, a), v) == d).all()
    assert abs(determinant(u)) == 1 and abs(determinant(v)) == 1
    diag = [int(d[i, i]) for i in range(min(d.shape))]
    off = d.copy()
    for i in range(min(d.shape)):
        off[i, i] = 0
    assert not off.any()
    nonzero = [x for x in diag if x]
    assert all(x > 0 for x in nonzero)
    assert diag[: len(nonzero)] == nonzero
    assert all(b % a_ == 0 for a_, b in zip(nonzero, nonzero[1:]))
    dd = determinant_divisors(a)
    assert len(dd) == len(nonzero)
    prod = 1
    for x, expected in zip(nonzero, dd):
        prod *= x
        assert prod == expected
    return nonzero


def test_snf_known():
    a = int_matrix([[2, 4, 4], [-6, 6, 12], [10, -4, -16]])
    assert check_snf(a) == [2, 6, 12]
    assert check_snf(int_matrix([[0, 0], [0, 0]])) == []


@settings(max_examples=100, deadline=None)
@given(st.integers(0, 10**6))
def test_snf_random(seed):
    check_snf(random_matrix(random.Random(seed)))


def test_homology_of_rp2():
    # cellular chain complex of RP^2: Z <-0- Z <-2- Z, homological grading
    cx = ChainComplex({0: 1, 1: 1, 2: 1}, {1: int_matrix([[0]]), 2: int_matrix([[2]])}, cohomological=False)
    h = homology(cx)
    assert h.at(0) == (1, ())
    assert h.at(1) == (0, (2,))
    assert h.at(2) == (0, ())
    assert cx.euler_characteristic() == 1


def test_not_a_complex():
    cx = ChainComplex({0: 1, 1: 1, 2: 1}, {0: int_matrix([[1]]), 1: int_matrix([[1]])})
    with pytest.raises(NotAComplex):
        homology(cx)


def test_invalid_filtration():
    cx = ChainComplex({0: 1, 1: 1}, {0: int_matrix([[1]])})
    with pytest.raises(InvalidFiltration):
        FilteredComplex(cx, {0: [1], 1: [0]}).check()


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 10**6))
def test_limit_page_matches_associated_graded(seed):
    fc = random_filtered_complex(random.Random(seed))
    einf = {k: v for k, v in limit_page(fc).ranks.items() if v}
    assert einf == associated_graded_ranks(fc)


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 10**6))
def test_page_euler_constant(seed):
    fc = random_filtered_complex(random.Random(seed))
    pages = filtration_pages(fc, 4)
    chis = {p.euler_characteristic() for p in pages}
    assert chis == {fc.complex.euler_characteristic()}


def test_pages_known_example():
    # x (level 0, deg 0) -> y (level 1, deg 1): killed on E_2, not E_1
    cx = ChainComplex({0: 1, 1: 1}, {0: int_matrix([[1]])})
    fc = FilteredComplex(cx, {0: [0], 1: [1]})
    e0, e1, e2 = filtration_pages(fc, 2)
    assert e1.ranks == {(0, 0): 1, (1, 0): 1}
    assert not any(e2.ranks.values())


def test_torsion_on_e1():
    cx = ChainComplex({0: 1, 1: 1}, {0: int_matrix([[3]])})
    fc = FilteredComplex(cx, {0: [0], 1: [0]})
    e1 = filtration_pages(fc, 1)[1]
    assert e1.torsion == {(0, 1): (3,)}


@settings(max_examples=100, deadline=None)
@given(st.integers(0, 10**6))
def test_collapse_on_generated_instances(seed):
    verdict, h_minus = collapse_check(random_collapse_instance(random.Random(seed)))
    assert verdict


def test_collapse_errors():
    inst = random_collapse_instance(random.Random(3))
    with pytest.raises(TruncationTooSmall):
        collapse_check(CollapseInstance(**{**inst.__dict__, "truncation": inst.n_levels}))
    broken = inst.d1[0].copy()
    r = len(inst.minus_degrees)
    broken[r:, :] = 0
    with pytest.raises(HypothesisFailed):
        collapse_check(CollapseInstance(**{**inst.__dict__, "d1": [broken]}))


def test_json_roundtrip():
    fc = random_filtered_complex(random.Random(11))
    data = json.dumps(complex_to_json(fc))
    back = complex_from_json(data)
    assert complex_to_json(back) == complex_to_json(fc)
    with pytest.raises(ValueError):
        complex_from_json('{"ranks": {}, "oops": 1}')
