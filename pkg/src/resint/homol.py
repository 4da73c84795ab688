"""Ext into the polynomial ring, canonical modules, Hom, unmixedness and
local cohomology via graded local duality.

Grading conventions: ``M(k)_d = M_{k+d}``.  For a module ``M`` over a
polynomial ring in ``N`` variables graded local duality gives
``dim H^p_m(M)_d = dim Ext^{N-p}(M, S)_{-d-N}``.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .groebner import Budget, syzygies
from .hilbert import HilbertSeries, free_module_series
from .ideals import GradedIdeal, krull_dim_codim
from .modules import FreeModule, P_MASK
from .resolve import FreeResolution, ModulePresentation, ZeroModuleError, cokernel_series


def dual_module(F: FreeModule) -> FreeModule:
    return FreeModule.top(F.ring, [-d for d in F.degrees])


def transpose_rows(res: FreeResolution, k: int, dual_src: FreeModule) -> list[tuple]:
    """Rows of ``d_k`` as vectors of ``F_k^*`` (one per basis vector of ``F_{k-1}``)."""
    tgt = res.modules[k - 1]
    rows: list[dict] = [dict() for _ in range(tgt.rank)]
    for s, v in enumerate(res.maps[k]):
        for u, f in tgt.to_sparse(v).items():
            rows[u][s] = f
    return [dual_src.from_sparse(r) for r in rows]


@dataclass
class ExtModule:
    """``Ext^k(M, S)`` with its Hilbert series; the presentation is built on demand."""

    index: int
    hilbert: HilbertSeries
    _builder: object = field(default=None, repr=False)
    _module: ModulePresentation | None = field(default=None, repr=False)

    @property
    def module(self) -> ModulePresentation:
        if self._module is None:
            self._module = self._builder()
        return self._module

    def is_zero(self) -> bool:
        return self.hilbert.is_zero()

    def dimension(self) -> int:
        return self.hilbert.dimension()

    def graded_hf(self) -> dict[int, int]:
        """Degree -> dimension for a finite-length module."""
        return self.hilbert.support()

    def length(self) -> int:
        return sum(self.graded_hf().values())


def _image_series(res: FreeResolution, k: int, budget) -> HilbertSeries:
    """Hilbert series of ``im(d_k^T)`` inside ``F_k^*`` (zero outside ``1..pd``)."""
    n = res.modules[0].ring.nvars
    if k < 1 or k > res.length:
        return HilbertSeries({}, n)
    D = dual_module(res.modules[k])
    rows = transpose_rows(res, k, D)
    return free_module_series(D.degrees, n) - cokernel_series(D, rows, budget=budget)


def ext_module(M: ModulePresentation, k: int, *, budget: Budget | None = None) -> ExtModule:
    """``Ext^k_S(M, S)`` from the dual of the minimal resolution of ``M``."""
    res = M.resolution(budget=budget)
    ring = M.ring
    n = ring.nvars
    if k < 0 or k > res.length:
        zero = ModulePresentation.free(ring, [])
        return ExtModule(k, HilbertSeries({}, n), None, zero)
    Dk = dual_module(res.modules[k])
    hs = free_module_series(Dk.degrees, n) - _image_series(res, k + 1, budget) - _image_series(res, k, budget)

    def build():
        rel = transpose_rows(res, k, Dk) if k >= 1 else []
        if k == res.length:
            sub = None
        else:
            D1 = dual_module(res.modules[k + 1])
            rows = transpose_rows(res, k + 1, D1)
            _, sub = syzygies(D1, rows, budget=budget, rep_module=Dk)
        return ModulePresentation(ring, Dk.degrees, sub, rel, ambient=Dk)

    return ExtModule(k, hs, build)


def ext_modules(M: ModulePresentation, *, budget: Budget | None = None) -> dict[int, ExtModule]:
    res = M.resolution(budget=budget)
    return {k: ext_module(M, k, budget=budget) for k in range(res.length + 1)}


def canonical_module(A: GradedIdeal, *, budget: Budget | None = None) -> ModulePresentation:
    """``omega_{S/A} = Ext^c(S/A, S)(-N)`` with ``c = codim A``."""
    dc = krull_dim_codim(A)
    if dc.unit:
        raise ValueError("canonical module of the zero ring")
    R = ModulePresentation.quotient_ring(A)
    ext = ext_module(R, dc.codim, budget=budget)
    return ext.module.twist(-A.ring.nvars)


@dataclass(frozen=True)
class UnmixedResult:
    unmixed: bool
    offending_k: int | None = None

    def __bool__(self):
        return self.unmixed


def unmixedness_test(A: GradedIdeal, *, budget: Budget | None = None) -> UnmixedResult:
    """``A`` of codim ``c`` is unmixed iff ``codim Ext^k(S/A, S) > k`` for every ``k > c``."""
    dc = krull_dim_codim(A)
    if dc.unit:
        raise ValueError("unmixedness of the unit ideal")
    n = A.ring.nvars
    R = ModulePresentation.quotient_ring(A)
    res = R.resolution(budget=budget)
    for k in range(dc.codim + 1, res.length + 1):
        e = ext_module(R, k, budget=budget)
        if e.is_zero():
            continue
        if n - e.dimension() <= k:
            return UnmixedResult(False, k)
    return UnmixedResult(True)


@dataclass
class LocalCohomologyProfile:
    nonzero: list[int]
    finite_length: dict[int, bool]
    graded_hf: dict[int, dict[int, int]]

    @property
    def depth(self) -> int:
        return min(self.nonzero)

    @property
    def dimension(self) -> int:
        return max(self.nonzero)

    def to_json(self) -> dict:
        return {
            "nonzero": list(self.nonzero),
            "finite_length": {str(p): v for p, v in self.finite_length.items()},
            "graded_hf": {str(p): {str(d): v for d, v in hf.items()} for p, hf in self.graded_hf.items()},
        }


def local_cohomology_profile(M: ModulePresentation, *, budget: Budget | None = None) -> LocalCohomologyProfile:
    """Indices with ``H^p_m(M) != 0``, read off from ``Ext^{N-p}(M, S)``."""
    if M.is_zero():
        raise ZeroModuleError("local cohomology profile of the zero module")
    n = M.ring.nvars
    nonzero, finite, hfs = [], {}, {}
    for k, e in sorted(ext_modules(M, budget=budget).items(), reverse=True):
        if e.is_zero():
            continue
        p = n - k
        nonzero.append(p)
        finite[p] = e.hilbert.is_finite_length()
        if finite[p]:
            hfs[p] = {-d - n: v for d, v in sorted(e.graded_hf().items(), reverse=True)}
    return LocalCohomologyProfile(nonzero, finite, hfs)


# ---------------------------------------------------------------------------
# Hom


def hom_module(M: ModulePresentation, N: ModulePresentation, *, budget: Budget | None = None) -> ModulePresentation:
    """``Hom_S(M, N)`` from presentations ``F1 -> F0 -> M`` and ``G1 -> G0 -> N``.

    A homomorphism is a map ``h: F0 -> G0`` with ``h(im F1) ⊆ im G1``,
    taken modulo maps landing in ``im G1``.
    """
    ring = M.ring
    F0, phi = M.presentation(budget)
    G0, psi = N.presentation(budget)
    r0, c0 = F0.rank, G0.rank
    r1 = len(phi)
    a = F0.degrees
    c = G0.degrees
    b = [F0.vec_degree(v) for v in phi]
    # Hom(F0, G0): basis E[s,u] of degree c_u - a_s
    H0 = FreeModule.top(ring, [c[u] - a[s] for s in range(r0) for u in range(c0)])
    # Hom(F1, G0): basis E'[t,u] of degree c_u - b_t
    H1 = FreeModule.top(ring, [c[u] - b[t] for t in range(r1) for u in range(c0)])
    phi_cols = [F0.to_sparse(v) for v in phi]
    psi_cols = [G0.to_sparse(v) for v in psi]
    gens = []
    # image of E[s,u] under precomposition with phi
    for s in range(r0):
        for u in range(c0):
            entries = {}
            for t in range(r1):
                f = phi_cols[t].get(s)
                if f is not None:
                    entries[t * c0 + u] = f
            gens.append(H1.from_sparse(entries))
    m = len(gens)
    # relations of N placed in each slot t
    for t in range(r1):
        for col in psi_cols:
            gens.append(H1.from_sparse({t * c0 + u: f for u, f in col.items()}))
    if r1 == 0:
        sub = None
    else:
        degs = [H0.degrees[i] for i in range(m)] + [H1.vec_degree(v) for v in gens[m:]]
        nz = [i for i, v in enumerate(gens) if v]
        # zero images are free kernel elements
        sub = [((H0.base[i], 1),) for i in range(m) if not gens[i]]
        if nz:
            sel = [gens[i] for i in nz]
            sel_rep = FreeModule.top(ring, [degs[i] for i in nz])
            _, syz = syzygies(H1, sel, budget=budget, rep_module=sel_rep)
            for v in syz:
                w = []
                for k, coef in v:
                    pos = nz[k & P_MASK]
                    if pos < m:
                        w.append((H0.base[pos] + ((k - sel_rep.base[k & P_MASK]) >> sel_rep.shift << H0.shift), coef))
                if w:
                    sub.append(tuple(sorted(w, reverse=True)))
    rel = []
    for s in range(r0):
        for col in psi_cols:
            rel.append(H0.from_sparse({s * c0 + u: f for u, f in col.items()}))
    return ModulePresentation(ring, H0.degrees, sub, rel, ambient=H0)
