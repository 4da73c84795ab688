"""Homogeneous ideals: sums, products, powers, intersection, colon,
saturation, elimination, Hilbert series and dimension."""

from __future__ import annotations

import warnings
from dataclasses import dataclass
from typing import Iterable, Sequence

from .groebner import (
    Budget,
    GroebnerBasis,
    buchberger,
    groebner_basis,
    ideal_module,
    minimal_generators,
    poly_to_vec,
    syzygies,
    vec_to_poly,
)
from .hilbert import HilbertSeries, monomial_quotient_series
from .ring import PolyRing, Polynomial, TermOrder

SATURATION_CAP = 20


class SaturationDidNotStabilize(RuntimeError):
    pass


class GradedIdeal:
    """An ideal given by generators, with a cached Groebner basis and Hilbert series."""

    def __init__(self, ring: PolyRing, gens: Iterable[Polynomial] = (), *, check: bool = True):
        self.ring = ring
        self.gens = [f for f in gens if f.terms]
        for f in self.gens:
            if f.ring != ring:
                raise ValueError("generator from a different ring")
        if check and not all(f.is_homogeneous() for f in self.gens):
            warnings.warn("ideal has inhomogeneous generators", stacklevel=2)
        self._gb: GroebnerBasis | None = None
        self._hs: HilbertSeries | None = None

    def __repr__(self):
        return f"GradedIdeal({len(self.gens)} generators)"

    @classmethod
    def parse(cls, ring: PolyRing, texts: Sequence[str]) -> "GradedIdeal":
        return cls(ring, [ring.parse(t) for t in texts])

    def to_text(self) -> list[str]:
        return [str(f) for f in self.gens]

    # Groebner data ------------------------------------------------------
    def gb(self, budget: Budget | None = None) -> GroebnerBasis:
        if self._gb is None:
            self._gb = groebner_basis(self.gens, budget=budget)
        return self._gb

    def is_zero(self) -> bool:
        return not self.gens

    def is_unit(self) -> bool:
        return any(g.is_constant() for g in self.gb().generators)

    def contains(self, f: Polynomial) -> bool:
        return self.gb().contains(f)

    def contains_ideal(self, other: "GradedIdeal") -> bool:
        gb = self.gb()
        return all(gb.contains(f) for f in other.gens)

    def equals(self, other: "GradedIdeal") -> bool:
        return self.contains_ideal(other) and other.contains_ideal(self)

    def normal_form(self, f: Polynomial) -> Polynomial:
        return self.gb().normal_form(f)

    def minimalized(self) -> "GradedIdeal":
        """Same ideal with a minimal generating set chosen among the generators."""
        if not self.gens:
            return self
        out = GradedIdeal(self.ring, minimal_generators(self.gens), check=False)
        out._gb = self._gb
        out._hs = self._hs
        return out

    def degrees(self) -> list[int]:
        return [f.degree() for f in self.gens]

    # invariants ---------------------------------------------------------
    def hilbert_series(self) -> HilbertSeries:
        """Hilbert series of ``S / self``."""
        if self._hs is None:
            leads = [g.lead_exponents() for g in self.gb().generators]
            self._hs = monomial_quotient_series(leads, self.ring.nvars)
        return self._hs


@dataclass(frozen=True)
class DimCodim:
    dim: int
    codim: int
    unit: bool = False

    def __iter__(self):
        return iter((self.dim, self.codim))


# ---------------------------------------------------------------------------
# basic operations


def _same_ring(A: GradedIdeal, B: GradedIdeal):
    if A.ring != B.ring:
        raise ValueError("ideals live in different rings")


def ideal_sum(A: GradedIdeal, B: GradedIdeal) -> GradedIdeal:
    _same_ring(A, B)
    return GradedIdeal(A.ring, A.gens + B.gens, check=False)


def ideal_product(A: GradedIdeal, B: GradedIdeal) -> GradedIdeal:
    _same_ring(A, B)
    prods = {}
    for f in A.gens:
        for g in B.gens:
            h = f * g
            prods.setdefault(h, None)
    return GradedIdeal(A.ring, list(prods), check=False)


def ideal_power(A: GradedIdeal, j: int) -> GradedIdeal:
    """``A^j`` generated by all j-fold products (``A^0`` is the unit ideal)."""
    if j < 0:
        raise ValueError("negative power")
    out = GradedIdeal(A.ring, [A.ring.one()], check=False)
    for _ in range(j):
        out = ideal_product(out, A)
    return out


def exact_divide(f: Polynomial, b: Polynomial) -> Polynomial:
    """``f / b`` when ``b`` divides ``f`` exactly."""
    ring = f.ring
    field = ring.field
    codec = ring.codec
    inv = field.inv(b.lead_coeff)
    q: dict[int, object] = {}
    r = f
    lb = b.lead_key
    while r.terms:
        lk, lc = r.terms[0]
        if not codec.divides(lb, lk):
            raise ArithmeticError("divisor does not divide")
        mk = lk - lb + codec.one
        c = field(lc * inv)
        q[mk] = c
        r = r - ring.from_dict({mk: c}) * b
    return ring.from_dict(q)


# ---------------------------------------------------------------------------
# elimination


_AUX = "_t"


def _aux_ring(ring: PolyRing) -> PolyRing:
    """Ring with one extra variable of weight 0, ordered to eliminate it."""
    if _AUX in ring.var_names:
        raise ValueError("auxiliary variable name clashes with ring")
    return PolyRing((_AUX,) + ring.var_names, ring.field,
                    TermOrder.elimination(1, degree_first=True), (0,) + ring.weights)


def _lift(E: PolyRing, f: Polynomial, t_power: int = 0) -> Polynomial:
    dec = f.ring.codec.decode
    enc = E.codec.encode
    return E.from_dict({enc((t_power,) + dec(k)): c for k, c in f.terms})


def _drop(ring: PolyRing, f: Polynomial, nelim: int) -> Polynomial:
    dec = f.ring.codec.decode
    enc = ring.codec.encode
    return ring.from_dict({enc(dec(k)[nelim:]): c for k, c in f.terms})


def ideal_intersection(A: GradedIdeal, B: GradedIdeal, *, budget: Budget | None = None) -> GradedIdeal:
    """``A ∩ B`` by eliminating ``t`` from ``t A + (1 - t) B``."""
    _same_ring(A, B)
    ring = A.ring
    if A.is_zero() or B.is_zero():
        return GradedIdeal(ring, [], check=False)
    if A.is_unit():
        return GradedIdeal(ring, B.gens, check=False)
    if B.is_unit():
        return GradedIdeal(ring, A.gens, check=False)
    E = _aux_ring(ring)
    gens = [_lift(E, f, 1) for f in A.gens]
    for g in B.gens:
        gens.append(_lift(E, g, 0) - _lift(E, g, 1))
    mod = ideal_module(E)
    res = buchberger(mod, [poly_to_vec(mod, f) for f in gens], budget=budget, what="intersection")
    out = []
    for v in res.basis:
        f = vec_to_poly(mod, v)
        if f.lead_exponents()[0] == 0:
            out.append(_drop(ring, f, 1))
    return GradedIdeal(ring, minimal_generators(out), check=False)


def ideal_quotient(A: GradedIdeal, B: GradedIdeal, *, budget: Budget | None = None) -> GradedIdeal:
    """``A : B``, intersecting ``(A ∩ (b)) / b`` over the generators ``b`` of ``B``."""
    _same_ring(A, B)
    ring = A.ring
    if not B.gens:
        return GradedIdeal(ring, [ring.one()], check=False)
    result: GradedIdeal | None = None
    for b in B.gens:
        part = ideal_colon_element(A, b, budget=budget)
        result = part if result is None else ideal_intersection(result, part, budget=budget)
        if result.is_zero():
            break
    return result


def ideal_colon_element(A: GradedIdeal, b: Polynomial, *, budget: Budget | None = None) -> GradedIdeal:
    ring = A.ring
    if A.is_zero():
        return GradedIdeal(ring, [], check=False)
    inter = ideal_intersection(A, GradedIdeal(ring, [b], check=False), budget=budget)
    return GradedIdeal(ring, [exact_divide(f, b) for f in inter.gens], check=False)


def ideal_quotient_by_syzygies(A: GradedIdeal, B: GradedIdeal, *, budget: Budget | None = None) -> GradedIdeal:
    """``A : B`` by a second route: ``A : b`` is the first coordinate of ``Syz(b, A)``.

    Used to cross-check :func:`ideal_quotient`.
    """
    _same_ring(A, B)
    ring = A.ring
    mod = ideal_module(ring)
    result: GradedIdeal | None = None
    for b in B.gens:
        gens = [poly_to_vec(mod, b)] + [poly_to_vec(mod, f) for f in A.gens]
        F, syz = syzygies(mod, gens, budget=budget)
        firsts = [F.to_columns(v)[0] for v in syz]
        part = GradedIdeal(ring, firsts, check=False)
        result = part if result is None else ideal_intersection(result, part, budget=budget)
    return result


def ideal_saturation(A: GradedIdeal, B: GradedIdeal, *, budget: Budget | None = None,
                     cap: int = SATURATION_CAP) -> tuple[GradedIdeal, int]:
    """``A : B^∞`` by iterated quotients; returns the ideal and the number of steps."""
    cur = A
    for step in range(1, cap + 1):
        nxt = ideal_quotient(cur, B, budget=budget)
        if nxt.contains_ideal(cur) and cur.contains_ideal(nxt):
            return cur, step - 1
        cur = nxt
    raise SaturationDidNotStabilize(f"saturation not stable after {cap} quotients")


def eliminate(A: GradedIdeal, variables: Sequence[str | int], *, budget: Budget | None = None) -> GradedIdeal:
    """``A ∩ k[other variables]``, returned in the ring of the remaining variables."""
    ring = A.ring
    idx = [ring.index(v) if isinstance(v, str) else v for v in variables]
    if not idx:
        return A
    rest = [i for i in range(ring.nvars) if i not in idx]
    perm = idx + rest
    if not rest:
        raise ValueError("cannot eliminate every variable")
    if not all(f.is_homogeneous() for f in A.gens):
        warnings.warn("eliminating from an inhomogeneous ideal", stacklevel=2)
    names = [ring.var_names[i] for i in perm]
    E = PolyRing(names, ring.field, TermOrder.elimination(len(idx)), [ring.weights[i] for i in perm])
    dec = ring.codec.decode
    enc = E.codec.encode
    gens = [E.from_dict({enc(tuple(dec(k)[i] for i in perm)): c for k, c in f.terms}) for f in A.gens]
    gb = groebner_basis(gens, budget=budget)
    sub = PolyRing([ring.var_names[i] for i in rest], ring.field, ring.order if ring.order.kind == "degrevlex"
                   else TermOrder.degrevlex(), [ring.weights[i] for i in rest])
    k = len(idx)
    out = [_drop(sub, f, k) for f in gb.generators if not any(f.lead_exponents()[:k])]
    return GradedIdeal(sub, out, check=False)


# ---------------------------------------------------------------------------
# invariants


def hilbert_series(A: GradedIdeal) -> HilbertSeries:
    return A.hilbert_series()


def krull_dim_codim(A: GradedIdeal) -> DimCodim:
    """Dimension of ``S / A`` and codimension of ``A``.

    The unit ideal gets dimension 0 by convention and is flagged.
    """
    n = A.ring.nvars
    if A.is_zero():
        return DimCodim(n, 0)
    if A.is_unit():
        return DimCodim(0, n, unit=True)
    d = A.hilbert_series().dimension()
    return DimCodim(d, n - d)


def is_nonzerodivisor(f: Polynomial, A: GradedIdeal, *, budget: Budget | None = None) -> bool:
    """True iff ``A : f == A``."""
    q = ideal_colon_element(A, f, budget=budget) if not A.is_zero() else A
    return A.contains_ideal(q)
