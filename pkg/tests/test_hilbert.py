from itertools import combinations_with_replacement

from hypothesis import given, settings

from resint import GradedIdeal
from resint.hilbert import HilbertSeries, free_module_series, monomial_quotient_series
from resint.ideals import hilbert_series, krull_dim_codim

from strategies import monomial_ideals


def _monomials(nvars, d):
    for combo in combinations_with_replacement(range(nvars), d):
        e = [0] * nvars
        for v in combo:
            e[v] += 1
        yield tuple(e)


def test_three_quadrics_in_two_variables(kxy):
    A = GradedIdeal.parse(kxy, ["x^2", "x*y", "y^2"])
    hs = hilbert_series(A)
    assert hs.hf_range(0, 5) == {0: 1, 1: 2, 2: 0, 3: 0, 4: 0, 5: 0}
    assert hs.is_finite_length() and hs.dimension() == 0


def test_minors_n4(ctx4):
    hs = hilbert_series(ctx4.I)
    assert [hs.hf(d) for d in range(3)] == [1, 8, 30]
    assert krull_dim_codim(ctx4.I).dim == 5


def test_series_arithmetic():
    a = free_module_series([0, 1], 2)
    assert (a - a).is_zero()
    assert a.shift(2).hf(2) == 1 and a.shift(2).hf(1) == 0
    assert HilbertSeries({0: 1, 1: -1}, 1) == HilbertSeries({0: 1}, 0)


def test_zero_and_unit_conventions(kxy):
    assert krull_dim_codim(GradedIdeal(kxy, [])).dim == 2
    unit = krull_dim_codim(GradedIdeal(kxy, [kxy.one()]))
    assert unit.unit and unit.dim == 0


@settings(max_examples=120, deadline=None)
@given(monomial_ideals())
def test_monomial_series_against_counting(gens):
    hs = monomial_quotient_series(gens, 3)
    for d in range(10):
        outside = sum(1 for m in _monomials(3, d)
                      if not any(all(x >= y for x, y in zip(m, g)) for g in gens))
        assert hs.hf(d) == outside
