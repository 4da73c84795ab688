from resint import (
    GradedIdeal,
    ModulePresentation,
    canonical_module,
    ext_module,
    hom_module,
    local_cohomology_profile,
    unmixedness_test,
)


def Q(ring, *texts):
    return ModulePresentation.quotient_ring(GradedIdeal.parse(ring, list(texts)))


def test_ext_of_residue_field(kxy):
    k = Q(kxy, "x", "y")
    assert ext_module(k, 0).is_zero() and ext_module(k, 1).is_zero()
    assert ext_module(k, 2).graded_hf() == {-2: 1}


def test_top_ext_of_determinantal_ring(ctx4):
    R = ModulePresentation.quotient_ring(ctx4.I)
    e = ext_module(R, 3)
    assert not e.is_zero()
    assert e.dimension() == 5
    assert ext_module(R, 4).is_zero()


def test_canonical_module_of_hypersurface(kxy):
    w = canonical_module(GradedIdeal.parse(kxy, ["x"]))
    # omega of k[y] is k[y](-1)
    assert w.hilbert_series() == Q(kxy, "x").hilbert_series().shift(1)


def test_canonical_module_of_complete_intersection(kxyz):
    A = GradedIdeal.parse(kxyz, ["x^2", "y^3"])
    R = ModulePresentation.quotient_ring(A)
    # Gorenstein, omega = R(2 + 3 - 3)
    assert canonical_module(A).hilbert_series() == R.hilbert_series().shift(-2)


def test_hom_examples(kxy):
    S1 = ModulePresentation.free(kxy, [1])
    S = ModulePresentation.free(kxy, [0])
    assert hom_module(S1, S).hilbert_series() == S.hilbert_series().shift(-1)
    assert hom_module(Q(kxy, "x", "y"), S).is_zero()


def test_hom_into_quotient(kxy):
    # Hom(S/(x), S/(x^2)) is generated by the class of x
    M = hom_module(Q(kxy, "x"), Q(kxy, "x^2"))
    assert M.hilbert_series() == Q(kxy, "x").hilbert_series().shift(1)


def test_unmixedness(kxyz, chain4):
    assert not unmixedness_test(GradedIdeal.parse(kxyz, ["x^2", "x*y"]))
    assert unmixedness_test(GradedIdeal.parse(kxyz, ["x*y"]))
    for i in range(1, 5):
        assert unmixedness_test(chain4.K(i))


def test_profiles(kxy, kxyz, chain4):
    p = local_cohomology_profile(Q(kxy, "x", "y"))
    assert p.nonzero == [0] and p.graded_hf[0] == {0: 1}
    p = local_cohomology_profile(Q(kxyz, "x^2", "x*y"))
    assert (p.depth, p.dimension) == (1, 2)
    # the embedded component is a line, so H^1 is not of finite length
    assert not p.finite_length[1]
    p = local_cohomology_profile(Q(kxy, "x^2", "x*y"))
    assert p.nonzero == [0, 1] and p.graded_hf[0] == {1: 1}
    p = local_cohomology_profile(ModulePresentation.quotient_ring(chain4.K(4)))
    assert p.nonzero == [1, 4]
    assert p.graded_hf[1] == {0: 1}
    assert set(p.to_json()) == {"nonzero", "finite_length", "graded_hf"}


def test_socle_degree_through_duality(kxyz):
    # H^0 of S/(x^2, xy, xz) is spanned by x, so it sits in degree 1
    p = local_cohomology_profile(Q(kxyz, "x^2", "x*y", "x*z"))
    assert p.graded_hf[0] == {1: 1}
