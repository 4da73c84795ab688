"""Residual intersections of the ideal of 2x2 minors of a generic 2 x n matrix.

Notation: ``S = k[x[r,c]]``, ``I`` the ideal of 2x2 minors, ``g = n - 1``
its codimension, ``ell = 2n - 3`` its analytic spread, ``a_1..a_ell``
quadrics generating a minimal reduction of ``I``, ``J_i = (a_1..a_i)``,
``K_i = J_i : I`` and ``R_i = S / K_i``.  The graded modules
``M_{i,j} = (I^j / J_i I^{j-1})(2j)`` for ``j > 0``, ``M_{i,0} = R_i`` and
``M_{i,-1} = K_{i+1} / K_i`` carry the depth table.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field
from math import comb

from .field import CoefficientField
from .groebner import Budget, ideal_module, minimal_generators, poly_to_vec, syzygies
from .ideals import (
    GradedIdeal,
    ideal_intersection,
    ideal_power,
    ideal_product,
    ideal_quotient,
    krull_dim_codim,
    ideal_sum,
)
from .linalg import EchelonSpan, independent_subset, poly_vector, span_rank
from .modules import FreeModule
from .resolve import ModulePresentation
from .ring import PolyRing, Polynomial


class ReductionCheckFailed(RuntimeError):
    pass


class ChainRejected(RuntimeError):
    pass


def var_name(r: int, c: int) -> str:
    return f"x[{r},{c}]"


@dataclass
class DeterminantalContext:
    n: int
    ring: PolyRing
    minors: dict[tuple[int, int], Polynomial]
    I: GradedIdeal
    _powers: dict = field(default_factory=dict, repr=False)
    _power_pres: dict = field(default_factory=dict, repr=False)

    @property
    def g(self) -> int:
        return self.n - 1

    @property
    def ell(self) -> int:
        return 2 * self.n - 3

    @property
    def nvars(self) -> int:
        return 2 * self.n

    def x(self, r: int, c: int) -> Polynomial:
        return self.ring.var(var_name(r, c))

    def power_basis(self, j: int) -> list[Polynomial]:
        """A basis of the degree ``2j`` piece of ``I^j`` (its minimal generators)."""
        if j not in self._powers:
            if j == 0:
                self._powers[j] = [self.ring.one()]
            else:
                prods = [f * m for f in self.power_basis(j - 1) for m in self.minors.values()]
                self._powers[j] = [prods[k] for k in independent_subset(prods)]
        return self._powers[j]

    def power_ideal(self, j: int) -> GradedIdeal:
        return GradedIdeal(self.ring, self.power_basis(j), check=False)

    def power_presentation(self, j: int, budget: Budget | None = None):
        """``(F, relations)`` with ``F`` free on the basis of ``I^j`` in degree 0."""
        if j not in self._power_pres:
            basis = self.power_basis(j)
            mod = ideal_module(self.ring)
            F = FreeModule.top(self.ring, [0] * len(basis))
            _, rels = syzygies(mod, [poly_to_vec(mod, f) for f in basis], budget=budget, rep_module=F)
            self._power_pres[j] = (F, rels)
        return self._power_pres[j]

    def manifest(self) -> dict:
        return {"n": self.n, "prime": self.ring.field.p, "variables": list(self.ring.var_names)}


def build_context(n: int, prime: int | None = None) -> DeterminantalContext:
    """Generic 2 x n matrix, its minors and the ideal they generate."""
    if n < 4:
        raise ValueError("n must be at least 4 (n = 3 is a degenerate case)")
    fld = CoefficientField.prime(prime) if prime is not None else CoefficientField.prime()
    ring = PolyRing([var_name(r, c) for r in (1, 2) for c in range(1, n + 1)], fld)
    x = lambda r, c: ring.var(var_name(r, c))  # noqa: E731
    minors = {
        (q, r): x(1, q) * x(2, r) - x(1, r) * x(2, q)
        for q, r in itertools.combinations(range(1, n + 1), 2)
    }
    I = GradedIdeal(ring, list(minors.values()))
    ctx = DeterminantalContext(n, ring, minors, I)
    dc = krull_dim_codim(I)
    if dc.codim != n - 1:
        raise RuntimeError(f"codim I = {dc.codim}, expected {n - 1}")
    return ctx


# ---------------------------------------------------------------------------
# reductions


@dataclass
class ReductionSequence:
    kind: str  # "sparse" or "generic"
    elements: list[Polynomial]
    seed: int | None = None
    coefficients: list[dict] | None = None

    @property
    def source(self) -> str:
        return self.kind if self.seed is None else f"{self.kind}({self.seed})"

    def truncated(self, m: int) -> "ReductionSequence":
        return ReductionSequence(self.kind, self.elements[:m], self.seed)

    def to_text(self) -> list[str]:
        return [str(f) for f in self.elements]


def _span_equal_power(ctx: DeterminantalContext, J: list[Polynomial], r: int) -> bool:
    """Whether ``(J) * I^r`` equals ``I^(r+1)`` (compared in degree ``2r + 2``)."""
    prods = [a * b for a in J for b in ctx.power_basis(r)]
    return span_rank(prods) == len(ctx.power_basis(r + 1))


def reduction_number_check(ctx: DeterminantalContext, red: ReductionSequence) -> bool:
    """``J I^{n-3} == I^{n-2}`` and ``J I^{n-4} != I^{n-3}``."""
    n = ctx.n
    return _span_equal_power(ctx, red.elements, n - 3) and not _span_equal_power(ctx, red.elements, n - 4)


def sparse_reduction(ctx: DeterminantalContext) -> ReductionSequence:
    """``a_p`` is the sum of the minors ``d(q,r)`` with ``q + r = p + 2``."""
    elems = []
    for p in range(1, ctx.ell + 1):
        terms = [f for (q, r), f in ctx.minors.items() if q + r == p + 2]
        elems.append(sum(terms[1:], terms[0]))
    red = ReductionSequence("sparse", elems)
    if not _span_equal_power(ctx, elems, ctx.n - 3):
        raise ReductionCheckFailed("sparse sequence is not a reduction of I")
    return red


def generic_reduction(ctx: DeterminantalContext, seed: int, retries: int = 10) -> ReductionSequence:
    """Random combinations of the minors drawn from a seeded generator."""
    rng = random.Random(seed)
    p = ctx.ring.field.p
    keys = sorted(ctx.minors)
    for _ in range(retries):
        elems, coeffs = [], []
        for _ in range(ctx.ell):
            while True:
                row = {k: rng.randrange(p) for k in keys}
                if any(row.values()):
                    break
            coeffs.append(row)
            f = ctx.ring.zero()
            for k, c in row.items():
                if c:
                    f = f + ctx.minors[k].scale(c)
            elems.append(f)
        if _span_equal_power(ctx, elems, ctx.n - 3):
            return ReductionSequence("generic", elems, seed, coeffs)
    raise ReductionCheckFailed(f"no reduction found after {retries} draws (seed {seed})")


# ---------------------------------------------------------------------------
# residual chains


@dataclass
class ChainLevel:
    J: GradedIdeal
    K: GradedIdeal
    source: str
    codim: int
    geometric: bool | None  # None where the condition is not required (i = ell)


@dataclass
class ResidualChain:
    ctx: DeterminantalContext
    reduction: ReductionSequence
    levels: list[ChainLevel]
    fallback: "ResidualChain | None" = None
    sources: list[str] = field(default_factory=list)
    _modules: dict = field(default_factory=dict, repr=False)

    def level(self, i: int) -> ChainLevel:
        src = self.sources[i] if self.sources else self.levels[i].source
        if self.fallback is not None and src == self.fallback.reduction.source:
            return self.fallback.levels[i]
        return self.levels[i]

    def chain_for(self, i: int) -> "ResidualChain":
        lv = self.level(i)
        if self.fallback is not None and lv is self.fallback.levels[i]:
            return self.fallback
        return self

    def J(self, i: int) -> GradedIdeal:
        return self.level(i).J

    def K(self, i: int) -> GradedIdeal:
        return self.level(i).K

    def a(self, p: int) -> Polynomial:
        """``a_p`` (1-based) of the reduction used at level ``p - 1``."""
        return self.chain_for(p - 1).reduction.elements[p - 1]

    def source(self, i: int) -> str:
        return self.level(i).source

    @property
    def geometric_flags(self) -> list[bool | None]:
        return [self.level(i).geometric for i in range(len(self.levels))]

    def manifest(self) -> dict:
        out = {
            "reduction": self.reduction.source,
            "generators": self.reduction.to_text(),
            "sources": [self.source(i) for i in range(len(self.levels))],
        }
        if self.fallback is not None:
            out["fallback"] = {"reduction": self.fallback.reduction.source,
                               "generators": self.fallback.reduction.to_text()}
        return out


def _build_levels(ctx: DeterminantalContext, red: ReductionSequence, budget: Budget | None) -> list[ChainLevel]:
    levels = []
    ring = ctx.ring
    for i in range(ctx.ell + 1):
        J = GradedIdeal(ring, red.elements[:i], check=False)
        K = GradedIdeal(ring, [], check=False) if i == 0 else ideal_quotient(J, ctx.I, budget=budget)
        codim = krull_dim_codim(K).codim
        geo = None
        if i <= ctx.ell - 1:
            geo = codim == i and krull_dim_codim(ideal_sum(ctx.I, K)).codim >= i + 1
        levels.append(ChainLevel(J, K, red.source, codim, geo))
    return levels


def residual_chain(ctx: DeterminantalContext, red: ReductionSequence, *, fallback_seed: int = 17,
                   budget: Budget | None = None, retries: int = 5) -> ResidualChain:
    """All ``J_i`` and ``K_i = J_i : I`` for ``0 <= i <= ell``.

    Levels of a sparse chain that fail the geometric condition are taken
    from a seeded generic chain instead; the source of each level is
    recorded.
    """
    levels = _build_levels(ctx, red, budget)
    chain = ResidualChain(ctx, red, levels)
    bad = [i for i, lv in enumerate(levels) if lv.geometric is False]
    if not bad:
        chain.sources = [lv.source for lv in levels]
        return chain
    if red.kind != "sparse":
        raise ChainRejected(f"chain {red.source} is not geometric at levels {bad}")
    for t in range(retries):
        gen = generic_reduction(ctx, fallback_seed + t)
        glevels = _build_levels(ctx, gen, budget)
        if all(lv.geometric is not False for lv in glevels):
            chain.fallback = ResidualChain(ctx, gen, glevels)
            chain.sources = [gen.source if i in bad else levels[i].source for i in range(len(levels))]
            return chain
    raise ChainRejected(f"no geometric chain after {retries} generic draws")


# ---------------------------------------------------------------------------
# modules


def _check_level(ctx: DeterminantalContext, i: int):
    if not 0 <= i <= ctx.ell - 1:
        raise ValueError(f"level i={i} outside 0..{ctx.ell - 1}")


def module_Mij(chain: ResidualChain, i: int, j: int, budget: Budget | None = None) -> ModulePresentation:
    """``M_{i,j}``: ``(I^j / J_i I^{j-1})(2j)`` for ``j >= 1``, ``R_i`` for ``j = 0``
    and ``K_{i+1} / K_i`` for ``j = -1``."""
    ctx = chain.ctx
    _check_level(ctx, i)
    key = (i, j)
    if key in chain._modules:
        return chain._modules[key]
    if j == 0:
        M = ModulePresentation.quotient_ring(chain.K(i))
    elif j == -1:
        M = module_inverse(chain, i)
    elif j >= 1:
        M = _power_quotient(chain, i, j, budget)
    else:
        raise ValueError("j must be at least -1")
    chain._modules[key] = M
    return M


def _power_quotient(chain: ResidualChain, i: int, j: int, budget) -> ModulePresentation:
    """Cokernel presentation: relations of ``I^j`` plus the constant vectors
    spanning ``J_i I^{j-1}`` inside the degree ``2j`` piece."""
    ctx = chain.ctx
    basis = ctx.power_basis(j)
    F, rels = ctx.power_presentation(j, budget)
    span = EchelonSpan(ctx.ring.field, track=True)
    for f in basis:
        span.add(poly_vector(f))
    sub = chain.chain_for(i)
    extra = []
    for p in range(1, i + 1):
        a = sub.reduction.elements[p - 1]
        for b in ctx.power_basis(j - 1):
            coords = span.coordinates(poly_vector(a * b))
            if coords is None:
                raise RuntimeError("product outside I^j")
            extra.append(F.from_sparse({s: ctx.ring.constant(c) for s, c in coords.items()}))
    return ModulePresentation(ctx.ring, F.degrees, None, list(rels) + [v for v in extra if v], ambient=F)


def module_Mij_via_K(chain: ResidualChain, i: int, j: int) -> ModulePresentation:
    """``((I^j + K_i) / K_i)(2j)``: a second construction of ``M_{i,j}`` for ``j >= 1``."""
    ctx = chain.ctx
    return ModulePresentation.ideal(ctx.power_ideal(j), 2 * j, modulo=chain.K(i))


def module_inverse(chain: ResidualChain, i: int) -> ModulePresentation:
    """``K_{i+1} / K_i`` as a submodule of ``R_i``."""
    ctx = chain.ctx
    _check_level(ctx, i)
    lv = chain.chain_for(i)
    return ModulePresentation.ideal(lv.levels[i + 1].K, 0, modulo=lv.levels[i].K)


def inverse_via_hom(chain: ResidualChain, i: int, budget: Budget | None = None) -> ModulePresentation:
    """``Hom(M_{i,1}, R_i)``, a second construction of ``M_{i,-1}``."""
    from .homol import hom_module

    return hom_module(module_Mij(chain, i, 1, budget), module_Mij(chain, i, 0, budget), budget=budget)


# ---------------------------------------------------------------------------
# Grassmannian Hilbert function


@dataclass
class GrassmannHF:
    n: int
    values: dict[int, int]
    max_t: int
    plucker: dict[int, int] = field(default_factory=dict)
    minor_powers: dict[int, int] = field(default_factory=dict)

    def __call__(self, t: int) -> int:
        if t < 0:
            return 0
        if t > self.max_t:
            raise ValueError(f"h({t}) beyond computed range {self.max_t}")
        return self.values[t]


def plucker_ideal(n: int, field_: CoefficientField | None = None) -> GradedIdeal:
    pairs = list(itertools.combinations(range(1, n + 1), 2))
    ring = PolyRing([f"p[{a},{b}]" for a, b in pairs], field_ or CoefficientField.prime())
    P = {ab: ring.var(f"p[{ab[0]},{ab[1]}]") for ab in pairs}
    rels = []
    for a, b, c, d in itertools.combinations(range(1, n + 1), 4):
        rels.append(P[(a, b)] * P[(c, d)] - P[(a, c)] * P[(b, d)] + P[(a, d)] * P[(b, c)])
    return GradedIdeal(ring, rels)


class OracleDisagreement(RuntimeError):
    pass


def grassmann_hf(n: int, max_t: int, ctx: DeterminantalContext | None = None) -> GrassmannHF:
    """``h(t)`` from the Pluecker ideal's Hilbert series and from ``dim (I^t)_{2t}``."""
    if n < 4:
        raise ValueError("n must be at least 4")
    ctx = ctx or build_context(n)
    hs = plucker_ideal(n, ctx.ring.field).hilbert_series()
    plucker = {t: hs.hf(t) for t in range(max_t + 1)}
    minor_powers = {t: len(ctx.power_basis(t)) for t in range(max_t + 1)}
    if plucker != minor_powers:
        raise OracleDisagreement(f"Pluecker {plucker} != minor powers {minor_powers}")
    return GrassmannHF(n, dict(plucker), max_t, plucker, minor_powers)


def delta_power(h: GrassmannHF, i: int, t: int) -> int:
    """``Delta^i(h)(t)`` with ``h(t) = 0`` for ``t < 0``."""
    if i < 0:
        raise ValueError("negative difference order")
    return sum((-1) ** k * comb(i, k) * h(t - k) for k in range(i + 1))


# ---------------------------------------------------------------------------
# predicted values


def _check_range(n: int, i: int, j: int):
    ell = 2 * n - 3
    if n < 4 or not 0 <= i <= ell - 1 or j < -1:
        raise ValueError(f"(n, i, j) = ({n}, {i}, {j}) outside 0 <= i <= {ell - 1}, j >= -1")


def predicted_depth(n: int, i: int, j: int, *, literal: bool = False) -> int:
    """Depth of ``(I R_i)^j``; the cases are evaluated in order.

    The first two cases both match the single cell ``(g, -1)``.  By default
    that cell takes the ``dim R_i - 3`` value that the proof by regions
    establishes (region D for small n, region B otherwise); ``literal=True``
    keeps the first-match reading, which gives ``dim R_i`` there.
    """
    _check_range(n, i, j)
    g = n - 1
    dim = 2 * n - i
    if not literal and (i, j) == (g, -1):
        return dim - 3
    if j <= 0 and i <= g:
        return dim
    if -1 <= j <= min(1, i - g - 1):
        return dim - 3
    if j == 1 and i <= g - 1:
        return n + 2
    if j == 1 and g <= i <= g + 1:
        return dim
    if 2 <= j <= i - g - 1:
        return min(dim - 3, 4)
    return 4


def depth_case_overlap(n: int, i: int, j: int) -> bool:
    """True on the one cell where two depth cases disagree."""
    return (i, j) == (n - 1, -1)


def predicted_region(n: int, i: int, j: int) -> str:
    """Proof region of the cell; the first matching label in A..E order."""
    g, ell = n - 1, 2 * n - 3
    if (j >= 2 and i <= ell - 5) or (j >= i - g and ell - 4 <= i <= ell - 2):
        return "A"
    if j <= min(1, i - g - 1) and i <= ell - 5:
        return "B"
    if i - g <= j <= 1:
        return "C"
    if j <= i - g - 1 and i >= ell - 4:
        return "D"
    if j >= i - g and i == ell - 1:
        return "E"
    return "none"


def in_socle_range(n: int, i: int, j: int) -> bool:
    """Cells where the last Betti number of ``M_{i,j}`` is ``Delta^i(h)(j - 2)``."""
    g, ell = n - 1, 2 * n - 3
    return (j >= -1 and i <= ell - 5) or (j >= i - g and ell - 4 <= i <= ell - 2)


def linearity_start(n: int, i: int, j: int) -> int:
    """Position from which the resolution of ``M_{i,j}`` is linear."""
    g = n - 1
    if j >= i:
        return 0
    if j >= i - g:
        return i + 1
    return i + 4


def predicted_regularity(n: int, i: int) -> tuple[int | None, str]:
    """Regularity of ``R_i`` and the kind of claim behind it."""
    g = n - 1
    if i <= g - 1:
        return i, "theorem"
    if i == g:
        return i - 2, "theorem"
    if i == g + 1 and i >= 5:
        return i - 3, "theorem"
    if i >= g + 1:
        return i - 3, "conjecture"
    return None, "informative"


def colon_identities(chain: ResidualChain, i: int, j: int, budget: Budget | None = None) -> dict[str, bool]:
    """The four identities relating ``J_i``, ``K_i``, ``a_{i+1}`` and ``J = J_ell``."""
    if j < 1:
        raise ValueError("the power identity needs j >= 1")
    ctx = chain.ctx
    ring = ctx.ring
    J = chain.J(i)
    K = chain.K(i)
    a = chain.a(i + 1)
    A = GradedIdeal(ring, [a], check=False)
    out = {}
    out["J_i:a_{i+1} == K_i"] = (ideal_quotient(J, A, budget=budget) if i else J).equals(K)
    out["K_i cap I == J_i"] = (ideal_intersection(K, ctx.I, budget=budget) if i else K).equals(J)
    out["K_i:a_{i+1} == K_i"] = (ideal_quotient(K, A, budget=budget) if i else K).equals(K)
    full = GradedIdeal(ring, chain.chain_for(i).reduction.elements, check=False)
    Jj = ideal_power(full, j)
    lhs = ideal_intersection(J, Jj, budget=budget) if i else J
    rhs = ideal_product(J, ideal_power(full, j - 1)) if i else J
    out[f"J_i cap J^{j} == J_i J^{j - 1}"] = lhs.equals(rhs)
    return out
