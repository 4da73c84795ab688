"""Hypothesis strategies for small polynomials."""

from hypothesis import strategies as st

from resint import PolyRing

RING3 = PolyRing(["x", "y", "z"])


def polynomials(ring=RING3, max_terms=5, max_exp=3, homogeneous_degree=None):
    p = ring.field.p
    if homogeneous_degree is None:
        exps = st.tuples(*[st.integers(0, max_exp)] * ring.nvars)
    else:
        d = homogeneous_degree
        exps = st.lists(st.integers(0, d), min_size=ring.nvars - 1, max_size=ring.nvars - 1).map(
            lambda cuts: _composition(sorted(cuts), d))
    term = st.tuples(exps, st.integers(1, p - 1))
    return st.lists(term, max_size=max_terms).map(lambda ts: ring.from_exponents(ts))


def _composition(cuts, d):
    pts = [0] + cuts + [d]
    return tuple(pts[k + 1] - pts[k] for k in range(len(pts) - 1))


def homogeneous(ring=RING3, max_terms=4, degrees=(1, 2, 3)):
    return st.sampled_from(degrees).flatmap(
        lambda d: polynomials(ring, max_terms, homogeneous_degree=d).filter(lambda f: f.terms))


def monomial_ideals(nvars=3, max_gens=5, max_exp=4):
    mono = st.tuples(*[st.integers(0, max_exp)] * nvars).filter(any)
    return st.lists(mono, min_size=1, max_size=max_gens)


def s_polynomial(f, g):
    ring = f.ring
    ea, eb = f.lead_exponents(), g.lead_exponents()
    l = tuple(max(a, b) for a, b in zip(ea, eb))
    ma = ring.monomial(tuple(p - q for p, q in zip(l, ea)))
    mb = ring.monomial(tuple(p - q for p, q in zip(l, eb)))
    return f * ma * ring.constant(g.lead_coeff) - g * mb * ring.constant(f.lead_coeff)
