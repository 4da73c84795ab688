import json

from hypothesis import given, settings
from hypothesis import strategies as st

from resint import BettiTable, GradedIdeal, ModulePresentation, depth_and_pd, regularity
from resint.ideals import ideal_quotient
from resint.resolve import linear_from_position

from strategies import RING3, homogeneous


def R(ring, *texts):
    return ModulePresentation.quotient_ring(GradedIdeal.parse(ring, list(texts)))


def test_residue_field_koszul(kxy):
    k = R(kxy, "x", "y")
    res = k.resolution()
    assert res.betti().totals() == [1, 2, 1]
    assert depth_and_pd(k) == (0, 2)
    assert linear_from_position(res.betti(), 0)


def test_eagon_northcott_shape(ctx4):
    M = ModulePresentation.quotient_ring(ctx4.I)
    res = M.resolution()
    assert res.betti().totals() == [1, 6, 8, 3]
    assert depth_and_pd(M)[0] == 5


def test_free_module_has_length_zero(kxy):
    F = ModulePresentation.free(kxy, [0, 1])
    assert F.resolution().length == 0


def test_regularity_examples(kxy, chain4):
    assert regularity(R(kxy, "x^2", "x*y", "y^2")) == 1
    assert regularity(ModulePresentation.quotient_ring(chain4.K(2))) == 2
    assert regularity(ModulePresentation.quotient_ring(chain4.K(3))) == 1


def test_depth_of_last_level(chain4):
    assert depth_and_pd(ModulePresentation.quotient_ring(chain4.K(4)))[0] == 1


def test_linearity_examples(kxy, ctx4):
    M = ModulePresentation.ideal(ctx4.power_ideal(2), 4)
    assert linear_from_position(M.resolution().betti(), 0)
    assert not linear_from_position(R(kxy, "x^3", "y").resolution().betti(), 0)


def test_betti_serialization(kxy):
    B = R(kxy, "x^2", "x*y").resolution().betti()
    assert BettiTable.from_json(json.dumps(B.to_json())) == B
    assert set(B.to_json()[0]) == {"k", "d", "beta"}
    text = B.to_text()
    assert text.splitlines()[1].split()[0] == "total:"


def test_twist_moves_degrees(kxy):
    M = R(kxy, "x", "y")
    assert M.twist(3).generator_degrees() == (-3,)
    assert M.twist(3).hilbert_series() == M.hilbert_series().shift(-3)


@settings(max_examples=30, deadline=None)
@given(st.lists(homogeneous(degrees=(1, 2, 3)), min_size=1, max_size=4))
def test_resolution_properties(gens):
    A = GradedIdeal(RING3, gens)
    M = ModulePresentation.quotient_ring(A)
    res = M.resolution()
    assert res.check_complex()
    assert res.is_minimal()
    assert res.euler_series() == A.hilbert_series()
    depth, pd = depth_and_pd(M)
    assert depth + pd == RING3.nvars
    # depth 0 exactly when the maximal ideal is associated
    m = GradedIdeal(RING3, RING3.gens())
    has_socle = not A.contains_ideal(ideal_quotient(A, m))
    assert (depth == 0) == has_socle
