import warnings

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from resint import GradedIdeal, PolyRing, eliminate, ideal_intersection, ideal_power, ideal_quotient, ideal_saturation
from resint.ideals import (
    SaturationDidNotStabilize,
    ideal_quotient_by_syzygies,
    is_nonzerodivisor,
    krull_dim_codim,
)

from strategies import RING3, homogeneous


def I(ring, *texts):
    return GradedIdeal.parse(ring, list(texts))


def test_powers(kxy, ctx4):
    assert I(kxy, "x", "y").equals(I(kxy, "x", "y"))
    sq = ideal_power(I(kxy, "x", "y"), 2)
    assert sq.equals(I(kxy, "x^2", "x*y", "y^2"))
    assert ideal_power(I(kxy, "x"), 0).is_unit()
    assert len(ideal_power(ctx4.I, 2).minimalized().gens) == 20


def test_intersections(kxy):
    assert ideal_intersection(I(kxy, "x"), I(kxy, "y")).equals(I(kxy, "x*y"))
    assert ideal_intersection(I(kxy, "x^2", "x*y"), I(kxy, "y")).equals(I(kxy, "x*y"))
    A = I(kxy, "x^2", "y^3")
    assert ideal_intersection(A, I(kxy, "1")).equals(A)


def test_quotients(kxy):
    assert ideal_quotient(I(kxy, "x^2", "x*y"), I(kxy, "x")).equals(I(kxy, "x", "y"))
    assert ideal_quotient(I(kxy, "x"), I(kxy, "y")).equals(I(kxy, "x"))
    assert ideal_quotient(GradedIdeal(kxy, []), I(kxy, "x")).is_zero()


def test_saturation(kxy):
    sat, _ = ideal_saturation(I(kxy, "x^2", "x*y"), I(kxy, "y"))
    assert sat.equals(I(kxy, "x"))
    sat, steps = ideal_saturation(I(kxy, "x"), I(kxy, "y"))
    assert sat.equals(I(kxy, "x")) and steps == 0
    A = I(kxy, "x^3", "y^2")
    assert ideal_saturation(A, I(kxy, "1"))[0].equals(A)


def test_saturation_cap(kxy):
    with pytest.raises(SaturationDidNotStabilize):
        ideal_saturation(I(kxy, "x^5*y"), I(kxy, "x"), cap=2)


def test_elimination():
    R = PolyRing(["t", "x", "y"])
    with pytest.warns(UserWarning):
        E = eliminate(I(R, "t*x", "y - t*y"), ["t"])
    assert E.contains(E.ring.parse("x*y"))
    E = eliminate(I(R, "t - x"), ["t"])
    assert E.is_zero() or all(g.is_zero() for g in E.gens)


def test_inhomogeneous_input_warns():
    R = PolyRing(["t", "x"])
    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always")
        eliminate(GradedIdeal(R, [R.parse("t*x - 1")], check=False), ["t"])
    assert any("inhomogeneous" in str(w.message) for w in caught)


def test_nonzerodivisors(kxy):
    assert is_nonzerodivisor(kxy.parse("y"), I(kxy, "x"))
    assert not is_nonzerodivisor(kxy.parse("x"), I(kxy, "x^2", "x*y"))


def test_dimension_of_chain_member(chain4):
    dc = krull_dim_codim(chain4.K(2))
    assert (dc.dim, dc.codim) == (6, 2)


@settings(max_examples=20, deadline=None)
@given(st.lists(homogeneous(degrees=(1, 2)), min_size=1, max_size=3),
       st.lists(homogeneous(degrees=(1, 2)), min_size=1, max_size=2))
def test_quotient_routes_agree(a, b):
    A, B = GradedIdeal(RING3, a), GradedIdeal(RING3, b)
    q1 = ideal_quotient(A, B)
    q2 = ideal_quotient_by_syzygies(A, B)
    assert q1.equals(q2)
    # B * (A : B) lies in A
    for f in q1.gens:
        for g in B.gens:
            assert A.contains(f * g)


@settings(max_examples=20, deadline=None)
@given(st.lists(homogeneous(degrees=(1, 2)), min_size=1, max_size=3),
       st.lists(homogeneous(degrees=(1, 2)), min_size=1, max_size=3))
def test_intersection_is_contained_in_both(a, b):
    A, B = GradedIdeal(RING3, a), GradedIdeal(RING3, b)
    C = ideal_intersection(A, B)
    assert A.contains_ideal(C) and B.contains_ideal(C)
    for f in A.gens:
        for g in B.gens:
            assert C.contains(f * g)
