"""Buchberger's algorithm for submodules of graded free modules.

Ideals are handled as submodules of the rank one free module.  The
engine supports representation tracking (each basis element remembers
how it is built from the inputs), which yields syzygies, and detection
of minimal generators for homogeneous input processed degree by degree.
"""

from __future__ import annotations

import heapq
import time
from dataclasses import dataclass, field
from typing import Sequence

from .modules import FreeModule, P_MASK, _finish
from .ring import PolyRing, Polynomial


class GroebnerBudgetExceeded(RuntimeError):
    """Raised when a computation passes its time or size budget."""

    def __init__(self, what: str, elapsed: float, basis_size: int, degree: int):
        super().__init__(
            f"{what}: budget exceeded after {elapsed:.1f}s "
            f"(basis size {basis_size}, working degree {degree})"
        )
        self.what = what
        self.elapsed = elapsed
        self.basis_size = basis_size
        self.degree = degree


@dataclass
class Budget:
    seconds: float | None = None
    max_basis: int | None = None
    started: float = field(default_factory=time.monotonic)

    def check(self, what, size, degree):
        el = time.monotonic() - self.started
        if (self.seconds is not None and el > self.seconds) or (
            self.max_basis is not None and size > self.max_basis
        ):
            raise GroebnerBudgetExceeded(what, el, size, degree)


class ReducerSet:
    """Basis vectors indexed by lead position for divisor lookup."""

    __slots__ = ("module", "vecs", "inv", "by_pos", "lead_ring")

    def __init__(self, module: FreeModule):
        self.module = module
        self.vecs: list[tuple] = []
        self.inv: list = []
        self.by_pos: dict[int, list[tuple[int, int]]] = {}
        self.lead_ring: list[int] = []

    def add(self, vec) -> int:
        mod = self.module
        p = mod.ring.field.p
        idx = len(self.vecs)
        self.vecs.append(vec)
        self.inv.append(pow(vec[0][1], -1, p) if p is not None else 1 / vec[0][1])
        s, m = mod.split(vec[0][0])
        self.lead_ring.append(m)
        codec = mod.ring.codec
        self.by_pos.setdefault(s, []).append(((m & codec.comp_mask) | codec.guard, idx))
        return idx

    def find(self, key: int) -> int | None:
        mod = self.module
        s = key & P_MASK
        cands = self.by_pos.get(s)
        if not cands:
            return None
        m = ((key - mod.base[s]) >> mod.shift) + mod.ring.codec.one
        codec = mod.ring.codec
        cm = codec.comp_mask
        g = codec.guard
        mc = m & cm
        for rg, idx in cands:
            if (rg - mc) & g == g:
                return idx
        return None

    def __len__(self):
        return len(self.vecs)


def reduce_vector(reducers: ReducerSet, vec, *, full: bool = True, track=None, stop_below=None):
    """Normal form of ``vec`` modulo the reducers.

    ``track`` is ``(reps, rep_module, start)``: ``reps[i]`` is a vector in
    ``rep_module`` attached to reducer ``i`` and ``start`` is the initial
    representation of ``vec``.  Returns ``(remainder, representation)``
    where ``vec = remainder + sum q_i * g_i`` is mirrored by
    ``representation = start - sum q_i * reps[i]``.
    """
    mod = reducers.module
    p = mod.ring.field.p
    one = mod.ring.codec.one
    codec = mod.ring.codec
    cm = codec.comp_mask
    g = codec.guard
    base = mod.base
    sh = mod.shift
    by_pos = reducers.by_pos
    rvecs = reducers.vecs
    rinv = reducers.inv

    acc = dict(vec)
    heap = [-k for k in acc]
    heapq.heapify(heap)
    pop = heapq.heappop
    push = heapq.heappush
    rem = []
    if track is not None:
        reps, rep_mod, start = track
        tsh = rep_mod.shift
        racc = dict(start)
    while heap:
        k = -pop(heap)
        c = acc.pop(k)
        if p is not None:
            c %= p
        if not c:
            continue
        s = k & P_MASK
        cands = by_pos.get(s)
        idx = None
        if cands and (full or not rem):
            mc = (((k - base[s]) >> sh) + one) & cm
            for rg, i in cands:
                if (rg - mc) & g == g:
                    idx = i
                    break
        if idx is None:
            rem.append((k, c))
            if not full:
                # lead-only reduction: the rest is copied unchanged
                rest = []
                while heap:
                    kk = -pop(heap)
                    cc = acc.pop(kk)
                    if p is not None:
                        cc %= p
                    if cc:
                        rest.append((kk, cc))
                rem.extend(rest)
                break
            continue
        rv = rvecs[idx]
        f = c * rinv[idx]
        if p is not None:
            f %= p
        delta = k - rv[0][0]
        for kk, cc in rv[1:]:
            nk = kk + delta
            v = acc.get(nk)
            if v is None:
                push(heap, -nk)
                acc[nk] = -f * cc
            else:
                acc[nk] = v - f * cc
        if track is not None:
            rd = (delta >> sh) << tsh
            for kk, cc in reps[idx]:
                nk = kk + rd
                racc[nk] = racc.get(nk, 0) - f * cc
    rem_t = tuple(rem)
    if track is None:
        return rem_t, None
    return rem_t, _finish(racc, p)


@dataclass
class GBResult:
    module: FreeModule
    basis: list[tuple]
    reps: list[tuple] | None = None
    rep_module: FreeModule | None = None
    syzygies: list[tuple] | None = None
    minimal: list[int] | None = None  # indices of inputs that are minimal generators
    stats: dict = field(default_factory=dict)


def _vec_sugar(mod: FreeModule, vec) -> int:
    return max(mod.degree(k) for k, _ in vec)


def buchberger(
    module: FreeModule,
    gens: Sequence[tuple],
    *,
    track: bool = False,
    rep_module: FreeModule | None = None,
    rep_start: Sequence[tuple] | None = None,
    minimal: bool = False,
    reduce_result: bool = True,
    budget: Budget | None = None,
    what: str = "groebner basis",
) -> GBResult:
    """Groebner basis of the submodule generated by ``gens``.

    With ``track`` each basis vector carries its representation in
    ``rep_module`` (by default the free module on the inputs) and every
    reduction to zero yields a syzygy.  The syzygies returned generate the
    syzygy module of the inputs.  With ``minimal`` (homogeneous input) the
    indices of inputs forming a minimal generating set are reported.
    """
    p = module.ring.field.p
    codec = module.ring.codec
    gens = [tuple(g) for g in gens]
    if track:
        if rep_module is None:
            rep_module = FreeModule.top(module.ring, [module.vec_degree(v) if v else 0 for v in gens])
        if rep_start is None:
            rep_start = [((rep_module.base[i], 1),) for i in range(len(gens))]
    rank1 = module.rank == 1
    use_product = rank1 and not track

    red = ReducerSet(module)
    reps: list[tuple] = []
    sugar: list[int] = []
    syz: list[tuple] = []
    minimal_idx: list[int] = []
    pairs: list = []  # heap of (sugar, kind, lcmkey, i, j)
    counter = 0

    for gi, v in enumerate(gens):
        if v:
            heapq.heappush(pairs, (_vec_sugar(module, v), 1, -v[0][0], gi, -1))
        elif track:
            syz.append(rep_start[gi])

    def lcm_of(i, j):
        return module.lcm(red.vecs[i][0][0], red.vecs[j][0][0])

    def update(h):
        nonlocal pairs
        hk = red.vecs[h][0][0]
        hs, hm = module.split(hk)
        cands = [i for (_, i) in red.by_pos.get(hs, []) if i != h]
        lcms = {}
        for i in cands:
            lcms[i] = codec.lcm(red.lead_ring[i], hm)
        # chain criterion on the new pairs
        disjoint = {}
        for i in cands:
            disjoint[i] = use_product and codec.coprime(red.lead_ring[i], hm)
        C = list(cands)
        D = []
        while C:
            i = C.pop()
            li = lcms[i]
            if disjoint[i]:
                D.append(i)
                continue
            dominated = False
            for j in C:
                if codec.divides(lcms[j], li):
                    dominated = True
                    break
            if not dominated:
                for j in D:
                    if codec.divides(lcms[j], li):
                        dominated = True
                        break
            if not dominated:
                D.append(i)
        # old pairs whose lcm is divisible by lead(h)
        kept = []
        changed = False
        for entry in pairs:
            _, kind, lk, i, j = entry
            if kind == 0:
                s, lm = module.split(-lk)
                if s == hs and codec.divides(hm, lm):
                    li = codec.lcm(red.lead_ring[i], hm)
                    lj = codec.lcm(red.lead_ring[j], hm)
                    if li != lm and lj != lm:
                        changed = True
                        continue
            kept.append(entry)
        if changed:
            heapq.heapify(kept)
            pairs = kept
        for i in D:
            if disjoint[i]:
                continue
            lm = lcms[i]
            lk = module.term(hs, lm)
            deg_i = module.degree(red.vecs[i][0][0])
            deg_h = module.degree(hk)
            dl = module.degree(lk)
            sg = max(sugar[i] + dl - deg_i, sugar[h] + dl - deg_h)
            heapq.heappush(pairs, (sg, 0, -lk, i, h))

    cur_deg = None
    while pairs:
        sg, kind, nlk, i, j = heapq.heappop(pairs)
        if budget is not None:
            counter += 1
            if counter % 16 == 0:
                budget.check(what, len(red), sg)
        if kind == 1:
            vec = gens[i]
            start = rep_start[i] if track else None
        else:
            lk = -nlk
            vi, vj = red.vecs[i], red.vecs[j]
            di = lk - vi[0][0]
            dj = lk - vj[0][0]
            ci, cj = vi[0][1], vj[0][1]
            acc = {}
            for k, c in vi[1:]:
                acc[k + di] = c * cj
            for k, c in vj[1:]:
                nk = k + dj
                acc[nk] = acc.get(nk, 0) - c * ci
            vec = _finish(acc, p)
            if track:
                tsh = rep_module.shift
                rdi = (di >> module.shift) << tsh
                rdj = (dj >> module.shift) << tsh
                racc = {}
                for k, c in reps[i]:
                    racc[k + rdi] = c * cj
                for k, c in reps[j]:
                    nk = k + rdj
                    racc[nk] = racc.get(nk, 0) - c * ci
                start = _finish(racc, p)
            else:
                start = None
        if track:
            rem, rep = reduce_vector(red, vec, track=(reps, rep_module, start))
        else:
            rem, rep = reduce_vector(red, vec)
        if not rem:
            if track and rep:
                syz.append(rep)
            continue
        if kind == 1:
            minimal_idx.append(i)
        h = red.add(rem)
        if track:
            reps.append(rep)
        sugar.append(max(sg, _vec_sugar(module, rem)) if kind == 0 else _vec_sugar(module, rem))
        update(h)

    basis = red.vecs
    out_reps = reps if track else None
    if reduce_result:
        basis, out_reps = _interreduce(module, basis, out_reps, rep_module)
    res = GBResult(module, basis, out_reps, rep_module if track else None,
                   syz if track else None, sorted(minimal_idx) if minimal else None)
    res.stats = {"pairs_done": counter}
    return res


def _interreduce(module, basis, reps, rep_module):
    """Reduced Groebner basis (monic, tails reduced)."""
    p = module.ring.field.p
    codec = module.ring.codec
    order = sorted(range(len(basis)), key=lambda i: basis[i][0][0])
    keep = []
    for i in order:
        s, m = module.split(basis[i][0][0])
        if any(module.split(basis[j][0][0])[0] == s and codec.divides(module.split(basis[j][0][0])[1], m)
               for j in keep):
            continue
        keep.append(i)
    red = ReducerSet(module)
    kreps = []
    for i in keep:
        red.add(basis[i])
        if reps is not None:
            kreps.append(reps[i])
    out, oreps = [], []
    for pos, i in enumerate(keep):
        v = basis[i]
        lead = v[:1]
        if len(v) > 1:
            # reduce the tail against everything (leads are pairwise non-divisible)
            if reps is not None:
                tail, rep = reduce_vector(red, v[1:], track=(kreps, rep_module, kreps[pos]))
            else:
                tail, _ = reduce_vector(red, v[1:])
                rep = None
            v = lead + tail
        else:
            rep = kreps[pos] if reps is not None else None
        c = v[0][1]
        if c != 1:
            inv = pow(c, -1, p) if p is not None else 1 / c
            v = tuple((k, (x * inv) % p if p is not None else x * inv) for k, x in v)
            if rep is not None:
                rep = tuple((k, (x * inv) % p if p is not None else x * inv) for k, x in rep)
        out.append(v)
        oreps.append(rep)
    return out, (oreps if reps is not None else None)


# ---------------------------------------------------------------------------
# convenience for ideals


def ideal_module(ring: PolyRing) -> FreeModule:
    return FreeModule.top(ring, [0])


def poly_to_vec(mod: FreeModule, f: Polynomial) -> tuple:
    b = mod.base[0]
    one = mod.ring.codec.one
    sh = mod.shift
    return tuple((b + ((k - one) << sh), c) for k, c in f.terms)


def vec_to_poly(mod: FreeModule, v) -> Polynomial:
    b = mod.base[0]
    one = mod.ring.codec.one
    sh = mod.shift
    return Polynomial(mod.ring, tuple((((k - b) >> sh) + one, c) for k, c in v))


@dataclass
class GroebnerBasis:
    """Reduced Groebner basis of an ideal, sorted by increasing lead term."""

    generators: list[Polynomial]
    order: object
    reduced: bool = True
    _reducers: object = field(default=None, repr=False, compare=False)

    def _reducer_set(self, ring: PolyRing) -> "tuple[FreeModule, ReducerSet]":
        if self._reducers is None:
            mod = ideal_module(ring)
            red = ReducerSet(mod)
            for g in self.generators:
                red.add(poly_to_vec(mod, g))
            self._reducers = (mod, red)
        return self._reducers

    def normal_form(self, f: Polynomial) -> Polynomial:
        if not self.generators:
            return f
        mod, red = self._reducer_set(f.ring)
        rem, _ = reduce_vector(red, poly_to_vec(mod, f))
        return vec_to_poly(mod, rem)

    def contains(self, f: Polynomial) -> bool:
        return not self.normal_form(f).terms

    def lead_exponents(self) -> list[tuple[int, ...]]:
        return [g.lead_exponents() for g in self.generators]

    def __len__(self):
        return len(self.generators)

    def __iter__(self):
        return iter(self.generators)


def groebner_basis(polys: Sequence[Polynomial], order=None, *, budget: Budget | None = None,
                   cache=None) -> GroebnerBasis:
    """Reduced Groebner basis of an ideal.

    The order defaults to the ring's; another order re-encodes the
    generators in a copy of the ring carrying that order.  ``cache`` is an
    optional :class:`resint.cache.GBDiskCache`.
    """
    polys = [f for f in polys if f.terms]
    if not polys:
        return GroebnerBasis([], order)
    ring = polys[0].ring
    if order is not None and order != ring.order:
        ring = PolyRing(ring.var_names, ring.field, order, ring.weights)
        polys = [ring.convert(f) for f in polys]
    if cache is not None:
        hit = cache.get(ring, polys)
        if hit is not None:
            return GroebnerBasis(sorted(hit, key=lambda f: f.lead_key), ring.order)
    mod = ideal_module(ring)
    res = buchberger(mod, [poly_to_vec(mod, f) for f in polys], budget=budget)
    gens = sorted((vec_to_poly(mod, v) for v in res.basis), key=lambda f: f.lead_key)
    if cache is not None:
        cache.put(ring, polys, gens)
    return GroebnerBasis(gens, ring.order)


def minimal_generators(polys: Sequence[Polynomial]) -> list[Polynomial]:
    """A minimal homogeneous generating set chosen among the inputs."""
    polys = [f for f in polys if f.terms]
    if not polys:
        return []
    ring = polys[0].ring
    mod = ideal_module(ring)
    res = buchberger(mod, [poly_to_vec(mod, f) for f in polys], minimal=True, reduce_result=False)
    return [polys[i] for i in res.minimal]


def normal_form(f: Polynomial, gb) -> Polynomial:
    """Remainder of ``f`` on division by a Groebner basis (reduced form)."""
    if isinstance(gb, GroebnerBasis):
        return gb.normal_form(f)
    ring = f.ring
    mod = ideal_module(ring)
    red = ReducerSet(mod)
    for g in gb:
        red.add(poly_to_vec(mod, g))
    rem, _ = reduce_vector(red, poly_to_vec(mod, f))
    return vec_to_poly(mod, rem)


def syzygies(module: FreeModule, gens: Sequence[tuple], *, budget: Budget | None = None,
             rep_module: FreeModule | None = None) -> tuple[FreeModule, list[tuple]]:
    """Minimal generators of the syzygy module of homogeneous ``gens``.

    Returns the free module on the inputs (graded by their degrees) and the
    syzygy vectors in it.
    """
    gb = buchberger(module, gens, track=True, rep_module=rep_module, reduce_result=False, budget=budget,
                    what="syzygies")
    F = gb.rep_module
    return F, minimal_subset(F, gb.syzygies, budget=budget)


def minimal_subset(module: FreeModule, vecs: Sequence[tuple], *, budget: Budget | None = None) -> list[tuple]:
    """A minimal generating set among homogeneous vectors."""
    vecs = [v for v in vecs if v]
    if not vecs:
        return []
    res = buchberger(module, vecs, minimal=True, reduce_result=False, budget=budget, what="minimal generators")
    return [vecs[i] for i in res.minimal]
