"""Graded module presentations, minimal free resolutions and Betti tables."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .groebner import Budget, ReducerSet, buchberger, minimal_subset, syzygies
from .hilbert import HilbertSeries, free_module_series, module_quotient_series
from .ideals import GradedIdeal
from .modules import FreeModule, P_MASK, vec_combine, vec_scale, vec_sub, vec_mul_poly
from .ring import PolyRing, Polynomial


class ZeroModuleError(ValueError):
    pass


class ModulePresentation:
    """Graded subquotient ``span(sub) / span(rel)`` of ``F = sum S(-degrees[s])``.

    ``sub=None`` means all of ``F`` (a cokernel).  Vectors are encoded
    terms of :class:`FreeModule` ``ambient``.  Use :meth:`from_columns`
    style constructors to build them from polynomials.
    """

    def __init__(self, ring: PolyRing, degrees: Sequence[int], sub: Sequence[tuple] | None,
                 rel: Sequence[tuple], *, ambient: FreeModule | None = None):
        self.ring = ring
        self.ambient = ambient or FreeModule.top(ring, list(degrees))
        self.sub = None if sub is None else [tuple(v) for v in sub if v]
        self.rel = [tuple(v) for v in rel if v]
        self._pres: tuple[FreeModule, list[tuple]] | None = None
        self._hs: HilbertSeries | None = None
        self._res: "FreeResolution | None" = None

    @property
    def degrees(self) -> tuple[int, ...]:
        return self.ambient.degrees

    def __repr__(self):
        sub = "F" if self.sub is None else f"{len(self.sub)} gens"
        return f"ModulePresentation(rank {self.ambient.rank}, {sub}, {len(self.rel)} relations)"

    # constructors -------------------------------------------------------
    @classmethod
    def cokernel(cls, ring: PolyRing, degrees: Sequence[int], relations: Iterable[Sequence[Polynomial]]):
        F = FreeModule.top(ring, list(degrees))
        return cls(ring, degrees, None, [F.from_columns(c) for c in relations], ambient=F)

    @classmethod
    def quotient_ring(cls, A: GradedIdeal, twist: int = 0):
        """``(S / A)(twist)``."""
        F = FreeModule.top(A.ring, [-twist])
        return cls(A.ring, [-twist], None, [F.from_columns([f]) for f in A.gens], ambient=F)

    @classmethod
    def ideal(cls, A: GradedIdeal, twist: int = 0, modulo: GradedIdeal | None = None):
        """``((A + B) / B)(twist)`` as a submodule of ``(S / B)(twist)``; ``B = 0`` by default."""
        F = FreeModule.top(A.ring, [-twist])
        rel = [] if modulo is None else [F.from_columns([f]) for f in modulo.gens]
        return cls(A.ring, [-twist], [F.from_columns([f]) for f in A.gens], rel, ambient=F)

    @classmethod
    def subquotient(cls, ring: PolyRing, degrees: Sequence[int], sub: Iterable[Sequence[Polynomial]],
                    rel: Iterable[Sequence[Polynomial]]):
        F = FreeModule.top(ring, list(degrees))
        return cls(ring, degrees, [F.from_columns(c) for c in sub], [F.from_columns(c) for c in rel],
                   ambient=F)

    @classmethod
    def free(cls, ring: PolyRing, degrees: Sequence[int]):
        return cls(ring, degrees, None, [])

    def twist(self, k: int) -> "ModulePresentation":
        """``M(k)``: every degree drops by ``k``."""
        F = FreeModule.top(self.ring, [d - k for d in self.degrees])
        sub = None if self.sub is None else [self.ambient.recode(v, F) for v in self.sub]
        rel = [self.ambient.recode(v, F) for v in self.rel]
        out = ModulePresentation(self.ring, F.degrees, sub, rel, ambient=F)
        if self._pres is not None:
            P, R = self._pres
            P2 = FreeModule.top(self.ring, [d - k for d in P.degrees])
            out._pres = (P2, [P.recode(v, P2) for v in R])
        return out

    # presentation -------------------------------------------------------
    def presentation(self, budget: Budget | None = None) -> tuple[FreeModule, list[tuple]]:
        """Minimal presentation ``F0 / im(relations)`` of the module."""
        if self._pres is None:
            if self.sub is None:
                F0, rels = self.ambient, list(self.rel)
            else:
                F0, rels = self._subquotient_relations(budget)
            self._pres = prune(F0, rels, budget=budget)
        return self._pres

    def _subquotient_relations(self, budget):
        F = self.ambient
        m = len(self.sub)
        gens = list(self.sub) + list(self.rel)
        degs = [F.vec_degree(v) for v in gens]
        G, syz = syzygies(F, gens, budget=budget, rep_module=FreeModule.top(self.ring, degs))
        F0 = FreeModule.top(self.ring, degs[:m])
        rels = []
        for v in syz:
            w = tuple((F0.base[k & P_MASK] + ((k - G.base[k & P_MASK]) >> G.shift << F0.shift), c)
                      for k, c in v if (k & P_MASK) < m)
            if w:
                rels.append(w)
        return F0, rels

    def hilbert_series(self, budget: Budget | None = None) -> HilbertSeries:
        if self._hs is None:
            F0, rels = self.presentation(budget)
            self._hs = cokernel_series(F0, rels, budget=budget)
        return self._hs

    def is_zero(self) -> bool:
        return self.presentation()[0].rank == 0

    def num_generators(self) -> int:
        return self.presentation()[0].rank

    def generator_degrees(self) -> tuple[int, ...]:
        return self.presentation()[0].degrees

    def resolution(self, max_length: int | None = None, budget: Budget | None = None) -> "FreeResolution":
        if self._res is None or (max_length is None and self._res.truncated):
            self._res = minimal_resolution(self, max_length=max_length, budget=budget)
        return self._res

    def relation_columns(self) -> list[list[Polynomial]]:
        F0, rels = self.presentation()
        return [F0.to_columns(v) for v in rels]


def cokernel_series(F: FreeModule, rels: Sequence[tuple], budget: Budget | None = None) -> HilbertSeries:
    n = F.ring.nvars
    if not rels:
        return free_module_series(F.degrees, n)
    gb = buchberger(F, rels, reduce_result=False, budget=budget, what="hilbert series")
    return series_from_basis(F, gb.basis)


def series_from_basis(F: FreeModule, basis: Sequence[tuple]) -> HilbertSeries:
    dec = F.ring.codec.decode
    leads: dict[int, list] = {}
    for v in basis:
        s, m = F.split(v[0][0])
        leads.setdefault(s, []).append(dec(m))
    return module_quotient_series(leads, F.degrees, F.ring.nvars)


def prune(F: FreeModule, rels: Sequence[tuple], budget: Budget | None = None) -> tuple[FreeModule, list[tuple]]:
    """Minimal presentation: cancel generators against relations with a unit
    entry, then keep a minimal set of relations."""
    p = F.ring.field.p
    field = F.ring.field
    rels = [tuple(v) for v in rels if v]
    alive = list(range(F.rank))
    while True:
        pivot = None
        for ri, v in enumerate(rels):
            for k, c in v:
                s = k & P_MASK
                if k == F.base[s]:
                    pivot = (ri, s, c)
                    break
            if pivot:
                break
        if pivot is None:
            break
        ri, s, c = pivot
        r = rels.pop(ri)
        inv = field.inv(c)
        new = []
        for v in rels:
            coeff = F.to_sparse([t for t in v if (t[0] & P_MASK) == s]).get(s)
            if coeff is not None:
                v = vec_sub(v, vec_mul_poly(F, r, coeff.scale(inv), p), p)
            if v:
                new.append(v)
        rels = new
        alive.remove(s)
    if len(alive) != F.rank:
        F2 = FreeModule.top(F.ring, [F.degrees[s] for s in alive])
        pos = {s: i for i, s in enumerate(alive)}
        out = []
        for v in rels:
            w = tuple((F2.base[pos[k & P_MASK]] + ((k - F.base[k & P_MASK]) >> F.shift << F2.shift), c)
                      for k, c in v)
            out.append(tuple(sorted(w, reverse=True)))
        F, rels = F2, out
    if rels:
        rels = minimal_subset(F, rels, budget=budget)
    return F, rels


# ---------------------------------------------------------------------------
# resolutions


@dataclass
class BettiTable:
    entries: dict[tuple[int, int], int]

    def beta(self, k: int, d: int | None = None) -> int:
        if d is None:
            return sum(v for (kk, _), v in self.entries.items() if kk == k)
        return self.entries.get((k, d), 0)

    def totals(self) -> list[int]:
        if not self.entries:
            return []
        top = max(k for k, _ in self.entries)
        return [self.beta(k) for k in range(top + 1)]

    def projective_dimension(self) -> int:
        nz = [k for (k, _), v in self.entries.items() if v]
        if not nz:
            raise ZeroModuleError("zero module has no projective dimension")
        return max(nz)

    def regularity(self) -> int:
        nz = [d - k for (k, d), v in self.entries.items() if v]
        if not nz:
            raise ZeroModuleError("zero module has no regularity")
        return max(nz)

    def degrees_at(self, k: int) -> list[int]:
        return sorted(d for (kk, d), v in self.entries.items() if kk == k and v)

    def to_json(self) -> list[dict]:
        return [{"k": k, "d": d, "beta": v} for (k, d), v in sorted(self.entries.items()) if v]

    @classmethod
    def from_json(cls, data) -> "BettiTable":
        if isinstance(data, str):
            data = json.loads(data)
        return cls({(e["k"], e["d"]): e["beta"] for e in data})

    def to_text(self) -> str:
        """Rows indexed by ``d - k``, columns by ``k``."""
        if not self.entries:
            return "total: 0"
        ks = range(max(k for k, _ in self.entries) + 1)
        rows = sorted({d - k for (k, d) in self.entries})
        width = max(len(str(v)) for v in self.entries.values())
        width = max(width, max(len(str(t)) for t in self.totals()), len(str(ks[-1])))
        lab = max(len(str(r)) for r in rows) + 1
        lab = max(lab, len("total:"))
        lines = [" " * (lab + 1) + " ".join(str(k).rjust(width) for k in ks)]
        lines.append("total:".rjust(lab) + " " + " ".join(str(t).rjust(width) for t in self.totals()))
        for r in range(rows[0], rows[-1] + 1):
            cells = []
            for k in ks:
                v = self.entries.get((k, k + r), 0)
                cells.append((str(v) if v else ".").rjust(width))
            lines.append(f"{r}:".rjust(lab) + " " + " ".join(cells))
        return "\n".join(lines)

    def __str__(self):
        return self.to_text()


@dataclass
class FreeResolution:
    """``0 <- F0 <- F1 <- ... <- Fp``; ``maps[k]`` lists the images in ``F_{k-1}``
    of the basis of ``F_k`` (``maps[0]`` is empty)."""

    modules: list[FreeModule]
    maps: list[list[tuple]]
    truncated: bool = False

    @property
    def length(self) -> int:
        return len(self.modules) - 1

    def betti(self) -> BettiTable:
        entries: dict[tuple[int, int], int] = {}
        for k, F in enumerate(self.modules):
            for d in F.degrees:
                entries[(k, d)] = entries.get((k, d), 0) + 1
        return BettiTable(entries)

    def twists(self) -> list[tuple[int, ...]]:
        return [F.degrees for F in self.modules]

    def matrix(self, k: int) -> list[list[Polynomial]]:
        """Matrix of ``d_k`` with rows indexed by ``F_{k-1}`` and columns by ``F_k``."""
        src, tgt = self.modules[k], self.modules[k - 1]
        cols = [tgt.to_columns(v) for v in self.maps[k]]
        return [[cols[c][r] for c in range(src.rank)] for r in range(tgt.rank)]

    def check_complex(self) -> bool:
        """``d_{k-1} d_k == 0`` for all k."""
        p = self.modules[0].ring.field.p
        for k in range(2, len(self.modules)):
            tgt = self.modules[k - 1]
            for v in self.maps[k]:
                if vec_combine(self.modules[k - 2], tgt.to_sparse(v), self.maps[k - 1], p):
                    return False
        return True

    def is_minimal(self) -> bool:
        """No differential has a nonzero constant entry."""
        for k in range(1, len(self.modules)):
            tgt = self.modules[k - 1]
            for v in self.maps[k]:
                if any(key == tgt.base[key & P_MASK] for key, _ in v):
                    return False
        return True

    def euler_series(self) -> HilbertSeries:
        n = self.modules[0].ring.nvars
        out = HilbertSeries({}, n)
        for k, F in enumerate(self.modules):
            hs = free_module_series(F.degrees, n)
            out = out + (hs if k % 2 == 0 else -hs)
        return out


def minimal_resolution(M: ModulePresentation, max_length: int | None = None,
                       budget: Budget | None = None) -> FreeResolution:
    """Minimal graded free resolution by iterated minimal syzygies."""
    F0, rels = M.presentation(budget)
    modules = [F0]
    maps: list[list[tuple]] = [[]]
    if F0.rank == 0:
        return FreeResolution(modules, maps)
    cur_mod, cur = F0, rels
    truncated = False
    while cur:
        if max_length is not None and len(modules) > max_length:
            truncated = True
            break
        degs = [cur_mod.vec_degree(v) for v in cur]
        Fk = FreeModule.top(M.ring, degs)
        modules.append(Fk)
        maps.append(list(cur))
        if len(modules) > M.ring.nvars + 1:
            raise RuntimeError("resolution longer than the number of variables")
        _, nxt = syzygies(cur_mod, cur, budget=budget, rep_module=Fk)
        cur_mod, cur = Fk, nxt
    return FreeResolution(modules, maps, truncated)


def depth_and_pd(M: ModulePresentation, budget: Budget | None = None) -> tuple[int, int]:
    """``(depth, projective dimension)`` via Auslander-Buchsbaum."""
    if M.is_zero():
        raise ZeroModuleError("depth of the zero module")
    pd = M.resolution(budget=budget).length
    return M.ring.nvars - pd, pd


def regularity(M: ModulePresentation, budget: Budget | None = None) -> int:
    if M.is_zero():
        raise ZeroModuleError("regularity of the zero module")
    return M.resolution(budget=budget).betti().regularity()


def linear_from_position(B: BettiTable, k0: int, offset: int = 0) -> bool:
    """True iff every column ``k >= k0`` is concentrated in degree ``k + offset``."""
    for (k, d), v in B.entries.items():
        if v and k >= k0 and d != k + offset:
            return False
    return True
