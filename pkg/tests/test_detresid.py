import pytest
from hypothesis import given
from hypothesis import strategies as st

from resint import ModulePresentation, krull_dim_codim
from resint.detresid import (
    build_context,
    colon_identities,
    delta_power,
    depth_case_overlap,
    generic_reduction,
    grassmann_hf,
    linearity_start,
    module_Mij,
    module_inverse,
    predicted_depth,
    predicted_region,
    predicted_regularity,
    reduction_number_check,
    sparse_reduction,
)


def test_context_sizes():
    with pytest.raises(ValueError):
        build_context(3)
    ctx = build_context(5)
    assert ctx.nvars == 10 and len(ctx.minors) == 10
    assert (ctx.g, ctx.ell) == (4, 7)


def test_sparse_sequence(ctx4):
    red = sparse_reduction(ctx4)
    assert len(red.elements) == 5
    # a_1 = d(1,2), a_5 = d(3,4), a_3 = d(1,4) + d(2,3)
    assert red.elements[0] == ctx4.minors[(1, 2)]
    assert red.elements[4] == ctx4.minors[(3, 4)]
    assert red.elements[2] == ctx4.minors[(1, 4)] + ctx4.minors[(2, 3)]
    assert reduction_number_check(ctx4, red)
    assert not reduction_number_check(ctx4, red.truncated(4))


def test_generic_reduction_is_reproducible(ctx4):
    a = generic_reduction(ctx4, 5)
    b = generic_reduction(ctx4, 5)
    assert a.to_text() == b.to_text()
    assert a.source == "generic(5)"
    assert reduction_number_check(ctx4, a)


def test_chain_dimensions(chain4):
    for i in range(1, 5):
        assert krull_dim_codim(chain4.K(i)).dim == 8 - i
    # at i = ell only codim >= ell is required
    assert krull_dim_codim(chain4.K(5)).codim >= 5
    assert chain4.geometric_flags == [True] * 5 + [None]


def test_M01_is_I_twisted(ctx4, chain4):
    M = module_Mij(chain4, 0, 1)
    I = ModulePresentation.ideal(ctx4.I, 2)
    assert M.hilbert_series() == I.hilbert_series()
    assert M.generator_degrees() == (0,) * 6


def test_inverse_module(chain4):
    # K_1 / K_0 is the principal ideal (a_1), free of rank one in degree 2
    assert module_inverse(chain4, 0).hilbert_series() == ModulePresentation.free(chain4.ctx.ring, [2]).hilbert_series()
    for i in range(1, 4):
        assert module_inverse(chain4, i).hilbert_series().dimension() == 8 - i


def test_grassmann_h_and_delta():
    h = grassmann_hf(4, 4)
    assert [h(t) for t in range(5)] == [1, 6, 20, 50, 105]
    assert h(-1) == 0
    assert [delta_power(h, 1, t) for t in range(5)] == [1, 5, 14, 30, 55]
    assert delta_power(h, 0, 3) == 50
    with pytest.raises(ValueError):
        h(5)


def test_predicted_depth_examples():
    # n = 4: g = 3, dim R_i = 8 - i
    assert predicted_depth(4, 0, 1) == 6
    assert predicted_depth(4, 2, 3) == 4
    assert predicted_depth(4, 4, -1) == 1
    assert predicted_depth(4, 3, 0) == 5
    assert predicted_depth(4, 3, -1) == 2
    assert predicted_depth(4, 3, -1, literal=True) == 5
    assert depth_case_overlap(4, 3, -1) and not depth_case_overlap(4, 3, 0)
    with pytest.raises(ValueError):
        predicted_depth(4, 5, 0)
    with pytest.raises(ValueError):
        predicted_depth(4, 0, -2)


@given(st.integers(4, 9), st.data())
def test_predicted_depth_bounds(n, data):
    i = data.draw(st.integers(0, 2 * n - 4))
    j = data.draw(st.integers(-1, 6))
    d = predicted_depth(n, i, j)
    assert 1 <= d <= 2 * n - i
    if j >= 2 and i <= n - 1:
        assert d == 4
    if not depth_case_overlap(n, i, j):
        assert d == predicted_depth(n, i, j, literal=True)


def test_regions():
    assert predicted_region(4, 4, 0) == "D"
    assert predicted_region(4, 4, 2) == "E"
    assert predicted_region(4, 2, 1) == "A"
    assert predicted_region(7, 6, -1) == "B"
    assert predicted_region(4, 0, 0) == "C"


@given(st.integers(4, 9), st.data())
def test_every_cell_has_a_region(n, data):
    i = data.draw(st.integers(0, 2 * n - 4))
    j = data.draw(st.integers(-1, 6))
    assert predicted_region(n, i, j) in "ABCDE"


def test_linearity_and_regularity_predictions():
    assert linearity_start(4, 1, 2) == 0
    assert linearity_start(4, 3, 1) == 4
    assert linearity_start(4, 4, 0) == 8
    assert [predicted_regularity(4, i)[0] for i in range(5)] == [0, 1, 2, 1, 1]
    assert predicted_regularity(4, 4)[1] == "conjecture"
    assert predicted_regularity(6, 6) == (3, "theorem")


def test_colon_identities(chain4):
    for i in range(5):
        assert all(colon_identities(chain4, i, 2).values())
    with pytest.raises(ValueError):
        colon_identities(chain4, 1, 0)
