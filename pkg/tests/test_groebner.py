from itertools import combinations_with_replacement

from hypothesis import given, settings
from hypothesis import strategies as st

from resint import GroebnerBasis, groebner_basis, normal_form
from resint.cache import GBDiskCache
from resint.groebner import buchberger, syzygies
from resint.linalg import EchelonSpan, poly_vector
from resint.modules import FreeModule

from strategies import RING3, homogeneous, s_polynomial


def texts(gb):
    return sorted(str(g) for g in gb.generators)


def test_gb_examples(kxy):
    x, y = kxy.gens()
    assert texts(groebner_basis([x ** 2, x * y])) == sorted(["x^2", "x*y"])
    gb = groebner_basis([x ** 2 - y ** 2, x * y])
    assert texts(gb) == sorted(str(f) for f in [x ** 2 - y ** 2, x * y, y ** 3])
    assert texts(groebner_basis([x])) == ["x"]


def test_normal_form_examples(kxy):
    x, y = kxy.gens()
    assert normal_form(x ** 2 * y, groebner_basis([x * y])).is_zero()
    assert normal_form(x ** 2 + y ** 2, groebner_basis([x])) == y ** 2
    assert normal_form(y ** 3, groebner_basis([x ** 2 - y ** 2, x * y])).is_zero()


def test_submodule_bases(kxy):
    x, y = kxy.gens()
    F = FreeModule.top(kxy, [0, 0])
    gens = [F.from_columns([x, kxy.zero()]), F.from_columns([kxy.zero(), x])]
    res = buchberger(F, gens)
    assert sorted(res.basis) == sorted(gens)
    single = [F.from_columns([x, y])]
    assert buchberger(F, single).basis == single


def test_koszul_syzygy(kxy):
    x, y = kxy.gens()
    R = FreeModule.top(kxy, [0])
    Fs, syz = syzygies(R, [R.from_columns([x]), R.from_columns([y])])
    assert len(syz) == 1
    a, b = Fs.to_columns(syz[0])
    assert a * x + b * y == kxy.zero() and a.degree() == 1


def test_disk_cache_round_trip(tmp_path, kxy):
    x, y = kxy.gens()
    cache = GBDiskCache(tmp_path)
    first = groebner_basis([x ** 2 - y ** 2, x * y], cache=cache)
    assert list(tmp_path.iterdir())
    second = groebner_basis([x ** 2 - y ** 2, x * y], cache=cache)
    assert texts(first) == texts(second)


def _monomials(nvars, d):
    for combo in combinations_with_replacement(range(nvars), d):
        e = [0] * nvars
        for v in combo:
            e[v] += 1
        yield tuple(e)


def _ideal_dim(gens, d):
    """dim of the degree-d part of the ideal, by plain linear algebra."""
    span = EchelonSpan(RING3.field)
    for f in gens:
        k = d - f.degree()
        if k < 0:
            continue
        for m in _monomials(RING3.nvars, k):
            span.add(poly_vector(f * RING3.monomial(m)))
    return span.rank


@settings(max_examples=40, deadline=None)
@given(st.lists(homogeneous(), min_size=1, max_size=4))
def test_s_pairs_reduce_to_zero(gens):
    gb = groebner_basis(gens)
    G = gb.generators
    for f in gens:
        assert gb.normal_form(f).is_zero()
    for a in range(len(G)):
        for b in range(a + 1, len(G)):
            assert gb.normal_form(s_polynomial(G[a], G[b])).is_zero()
    # reduced: no term of one element is divisible by another lead
    leads = [g.lead_exponents() for g in G]
    for g in G:
        for e, _ in g.exponents():
            for le in leads:
                if le != g.lead_exponents():
                    assert not all(x >= y for x, y in zip(e, le))


@settings(max_examples=25, deadline=None)
@given(st.lists(homogeneous(degrees=(1, 2)), min_size=1, max_size=3))
def test_lead_ideal_counts_match_linear_algebra(gens):
    gb = groebner_basis(gens)
    leads = [g.lead_exponents() for g in gb.generators]
    for d in range(1, 5):
        in_lead = sum(1 for m in _monomials(3, d) if any(all(x >= y for x, y in zip(m, l)) for l in leads))
        assert in_lead == _ideal_dim(gens, d)
