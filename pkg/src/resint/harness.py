"""Verification harness: suites of cells comparing computed invariants of the
residual chain with predicted values, plus report serialization.

A cell is fatal when it completed, carries a theorem-backed prediction and
does not match.  Conjectural and informative cells are reported only.
"""

from __future__ import annotations

import csv
import io
import json
import multiprocessing
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field
from typing import Any, Callable

from . import __version__
from .cache import CellCache, digest
from .detresid import (
    DeterminantalContext,
    ResidualChain,
    build_context,
    colon_identities,
    delta_power,
    depth_case_overlap,
    generic_reduction,
    grassmann_hf,
    in_socle_range,
    inverse_via_hom,
    linearity_start,
    module_Mij,
    module_Mij_via_K,
    predicted_depth,
    predicted_regularity,
    reduction_number_check,
    residual_chain,
    sparse_reduction,
)
from .groebner import Budget, GroebnerBudgetExceeded
from .homol import canonical_module, ext_module, hom_module, local_cohomology_profile, unmixedness_test
from .ideals import is_nonzerodivisor, krull_dim_codim
from .resolve import ModulePresentation, depth_and_pd, linear_from_position, regularity

PROVENANCE = ("theorem", "conjecture", "informative")
STATUS = ("ok", "timeout", "skipped")
SUITES = ("foundations", "depth", "structure", "betti", "asymptotics")


def _plain(value):
    """JSON-native form (tuples become lists, dict keys become strings)."""
    return json.loads(json.dumps(value, sort_keys=True))


@dataclass
class CellResult:
    n: int
    i: int | None
    j: int | None
    quantity: str
    predicted: Any
    provenance: str
    computed: Any
    match: bool | None
    source: str
    timing: int = 0
    status: str = "ok"
    note: str = ""

    def __post_init__(self):
        if self.provenance not in PROVENANCE:
            raise ValueError(f"bad provenance {self.provenance!r}")
        if self.status not in STATUS:
            raise ValueError(f"bad status {self.status!r}")
        self.predicted = _plain(self.predicted)
        self.computed = _plain(self.computed)

    @property
    def fatal(self) -> bool:
        return self.status == "ok" and self.provenance == "theorem" and self.match is False

    def to_json(self) -> dict:
        d = asdict(self)
        d["predicted"] = {"value": d.pop("predicted"), "provenance": d.pop("provenance")}
        return d

    @classmethod
    def from_json(cls, d: dict) -> "CellResult":
        d = dict(d)
        pred = d.pop("predicted")
        return cls(predicted=pred["value"], provenance=pred["provenance"], **d)


@dataclass
class VerificationReport:
    manifest: dict
    cells: list[CellResult] = field(default_factory=list)

    @property
    def summary(self) -> dict:
        out = {s: 0 for s in STATUS}
        out.update(match=0, mismatch=0, fatal=0, nonfatal_mismatch=0)
        for c in self.cells:
            out[c.status] += 1
            if c.status != "ok" or c.match is None:
                continue
            if c.match:
                out["match"] += 1
            else:
                out["mismatch"] += 1
                out["fatal" if c.fatal else "nonfatal_mismatch"] += 1
        return out

    @property
    def fatal(self) -> list[CellResult]:
        return [c for c in self.cells if c.fatal]

    def exit_code(self) -> int:
        return 1 if self.fatal else 0

    def find(self, quantity: str, i=None, j=None) -> list[CellResult]:
        return [c for c in self.cells if c.quantity == quantity
                and (i is None or c.i == i) and (j is None or c.j == j)]

    def to_json(self) -> dict:
        return {"manifest": self.manifest, "cells": [c.to_json() for c in self.cells], "summary": self.summary}

    @classmethod
    def from_json(cls, data: dict) -> "VerificationReport":
        return cls(data["manifest"], [CellResult.from_json(c) for c in data["cells"]])

    def __eq__(self, other):
        return isinstance(other, VerificationReport) and self.to_json() == other.to_json()


# ---------------------------------------------------------------------------
# run state


@dataclass
class RunConfig:
    n: int = 4
    prime: int = 32003
    reduction: str = "sparse"
    seed: int = 17
    jmax: int | None = None
    suites: tuple[str, ...] = SUITES
    cell_timeout: float | None = 600.0
    heavy: bool = False
    workers: int = 1
    use_cache: bool = False

    def resolved_jmax(self) -> int:
        if self.jmax is not None:
            return self.jmax
        return self.n - 1 if self.n == 4 else 3


class RunState:
    """Context, chain and lazily built generic comparison chain for one run."""

    def __init__(self, cfg: RunConfig):
        self.cfg = cfg
        self.ctx: DeterminantalContext = build_context(cfg.n, cfg.prime)
        if cfg.reduction == "sparse":
            red = sparse_reduction(self.ctx)
        elif cfg.reduction == "generic":
            red = generic_reduction(self.ctx, cfg.seed)
        else:
            raise ValueError(f"unknown reduction kind {cfg.reduction!r}")
        self.chain: ResidualChain = residual_chain(self.ctx, red, fallback_seed=cfg.seed)
        self._generic: ResidualChain | None = None
        self._h = None

    @property
    def n(self) -> int:
        return self.cfg.n

    def generic_chain(self) -> ResidualChain:
        if self._generic is None:
            self._generic = residual_chain(self.ctx, generic_reduction(self.ctx, self.cfg.seed))
        return self._generic

    def h(self, max_t: int):
        if self._h is None or self._h.max_t < max_t:
            self._h = grassmann_hf(self.n, max_t, self.ctx)
        return self._h

    def manifest(self) -> dict:
        cfg = self.cfg
        return {
            "software": {"package": "resint", "version": __version__},
            "n": cfg.n,
            "prime": cfg.prime,
            "reduction": cfg.reduction,
            "seed": cfg.seed,
            "jmax": cfg.resolved_jmax(),
            "heavy": cfg.heavy,
            "context": self.ctx.manifest(),
            "chain": self.chain.manifest(),
        }

    def budget(self) -> Budget:
        return Budget(self.cfg.cell_timeout)


# a task is (key, function name, args); functions return lists of CellResult
Task = tuple[str, str, tuple]
_TASKS: dict[str, Callable] = {}
_STATE: RunState | None = None


def task(fn):
    _TASKS[fn.__name__] = fn
    return fn


def _cell(st: RunState, i, j, quantity, predicted, provenance, computed, *, match=None,
          source=None, start=None, note="") -> CellResult:
    if match is None and predicted is not None:
        match = computed == predicted
    src = source if source is not None else (st.chain.source(i) if i is not None else st.chain.reduction.source)
    ms = int(1000 * (time.monotonic() - start)) if start is not None else 0
    return CellResult(st.n, i, j, quantity, predicted, provenance, computed, match, src, ms, "ok", note)


def _skipped(st: RunState, i, j, quantity, note, provenance="theorem") -> CellResult:
    return CellResult(st.n, i, j, quantity, None, provenance, None, None,
                      st.chain.reduction.source, 0, "skipped", note)


def _run_task(st: RunState, t: Task) -> list[CellResult]:
    key, name, args = t
    start = time.monotonic()
    try:
        return _TASKS[name](st, *args)
    except GroebnerBudgetExceeded as exc:
        i = args[0] if args and isinstance(args[0], int) else None
        j = args[1] if len(args) > 1 and isinstance(args[1], int) else None
        return [CellResult(st.n, i, j, name, None, "theorem", None, None, st.chain.reduction.source,
                           int(1000 * (time.monotonic() - start)), "timeout", str(exc))]


def _worker(t: Task) -> list[dict]:
    return [c.to_json() for c in _run_task(_STATE, t)]


def ell(n: int) -> int:
    return 2 * n - 3


def g_of(n: int) -> int:
    return n - 1


# ---------------------------------------------------------------------------
# foundations


@task
def t_dim(st: RunState, i: int):
    s = time.monotonic()
    dc = krull_dim_codim(st.chain.K(i))
    return [_cell(st, i, 0, "dim_R", 2 * st.n - i, "theorem", dc.dim, start=s)]


@task
def t_colon(st: RunState, i: int, j: int):
    s = time.monotonic()
    res = colon_identities(st.chain, i, j, st.budget())
    return [_cell(st, i, j, f"colon[{name}]", True, "theorem", ok, start=s) for name, ok in res.items()]


@task
def t_unmixed(st: RunState, i: int):
    s = time.monotonic()
    K = st.chain.K(i)
    dc = krull_dim_codim(K)
    out = [_cell(st, i, None, "codim_K", i, "theorem", dc.codim, start=s)]
    if i == 0:
        out.append(_skipped(st, i, None, "unmixed_K", "K_0 is the zero ideal"))
    else:
        s = time.monotonic()
        u = unmixedness_test(K, budget=st.budget())
        out.append(_cell(st, i, None, "unmixed_K", True, "theorem", bool(u), start=s,
                         note="" if u else f"Ext^{u.offending_k} has small codimension"))
    return out


@task
def t_geometric(st: RunState, i: int):
    flag = st.chain.level(i).geometric
    return [_cell(st, i, None, "geometric", True, "theorem", flag)]


@task
def t_nzd(st: RunState, i: int):
    s = time.monotonic()
    ok = is_nonzerodivisor(st.chain.a(i + 1), st.chain.K(i), budget=st.budget())
    return [_cell(st, i, None, "a_next_nonzerodivisor", True, "theorem", ok, start=s)]


@task
def t_ext_vanishing(st: RunState, j: int):
    s = time.monotonic()
    R = ModulePresentation.quotient_ring(st.ctx.power_ideal(j))
    e = ext_module(R, st.n + j - 1, budget=st.budget())
    return [_cell(st, None, j, "ext_vanishing_S/I^j", True, "theorem", e.is_zero(), start=s,
                  note=f"Ext^{st.n + j - 1}(S/I^{j}, S) = 0")]


@task
def t_reduction(st: RunState):
    s = time.monotonic()
    red = st.chain.reduction
    ok = reduction_number_check(st.ctx, red)
    trunc = reduction_number_check(st.ctx, red.truncated(len(red.elements) - 1))
    return [_cell(st, None, None, "reduction_number", True, "theorem", ok, start=s,
                  note=f"J I^{st.n - 3} = I^{st.n - 2} and J I^{st.n - 4} != I^{st.n - 3}"),
            _cell(st, None, None, "reduction_number_truncated", False, "theorem", trunc,
                  note="first ell-1 elements only")]


@task
def t_grassmann(st: RunState, t_max: int):
    s = time.monotonic()
    h = st.h(t_max)
    return [_cell(st, None, t, "grassmann_h", h.plucker[t], "theorem", h.minor_powers[t], start=s,
                  note="Pluecker Hilbert function vs number of generators of I^t")
            for t in range(t_max + 1)]


def foundations_tasks(st: RunState) -> list[Task]:
    n, jm = st.n, st.cfg.resolved_jmax()
    top = ell(n) - 1
    tasks: list[Task] = [("reduction", "t_reduction", ())]
    tasks += [(f"dim/{i}", "t_dim", (i,)) for i in range(top + 1)]
    tasks += [(f"geom/{i}", "t_geometric", (i,)) for i in range(top + 1)]
    tasks += [(f"unmixed/{i}", "t_unmixed", (i,)) for i in range(top + 1)]
    tasks += [(f"nzd/{i}", "t_nzd", (i,)) for i in range(top + 1)]
    tasks += [(f"colon/{i}/{j}", "t_colon", (i, j)) for i in range(top + 1) for j in range(1, jm + 1)]
    tasks += [(f"grassmann/{jm + 1}", "t_grassmann", (jm + 1,))]
    tasks += [(f"extvan/{j}", "t_ext_vanishing", (j,)) for j in range(2, n - 2)]
    if n - 3 < 2:
        tasks.append(("extvan/none", "t_ext_vacuous", ()))
    return tasks


@task
def t_ext_vacuous(st: RunState):
    return [_skipped(st, None, None, "ext_vanishing_S/I^j",
                     f"skipped/vacuous: the range 2 <= j <= {st.n - 3} is empty")]


# ---------------------------------------------------------------------------
# depth table


def _depth_cells(st: RunState, chain: ResidualChain, i: int, j: int, source: str | None) -> list[CellResult]:
    n = st.n
    s = time.monotonic()
    M = module_Mij(chain, i, j, st.budget())
    depth, _ = depth_and_pd(M, st.budget())
    note = ""
    if depth_case_overlap(n, i, j):
        note = (f"two depth cases apply here; the proof by regions gives {predicted_depth(n, i, j)}, "
                f"first-match reading gives {predicted_depth(n, i, j, literal=True)}")
    out = [_cell(st, i, j, "depth", predicted_depth(n, i, j), "theorem", depth, source=source, start=s, note=note)]
    s = time.monotonic()
    out.append(_cell(st, i, j, "dim", 2 * n - i, "theorem", M.hilbert_series().dimension(), source=source, start=s))
    return out


@task
def t_depth(st: RunState, i: int, j: int):
    out = _depth_cells(st, st.chain, i, j, None)
    if out[0].match is False and st.chain.reduction.kind == "sparse":
        # report the generic chain alongside rather than deciding between them
        out += _depth_cells(st, st.generic_chain(), i, j, st.generic_chain().reduction.source)
    s = time.monotonic()
    if j >= 1:
        a = module_Mij(st.chain, i, j).hilbert_series()
        b = module_Mij_via_K(st.chain, i, j).hilbert_series()
        out.append(_cell(st, i, j, "hf_power_quotient", True, "theorem", a == b, start=s,
                         note="HF of I^j/J_i I^{j-1} vs (I^j+K_i)/K_i, both twisted by 2j"))
    elif j == -1 and (st.n == 4 or st.cfg.heavy):
        a = module_Mij(st.chain, i, -1).hilbert_series()
        b = inverse_via_hom(st.chain, i, st.budget()).hilbert_series()
        out.append(_cell(st, i, j, "hf_inverse_hom", True, "theorem", a == b, start=s,
                         note="HF of K_{i+1}/K_i vs Hom(M_{i,1}, R_i)"))
    return out


def depth_tasks(st: RunState) -> list[Task]:
    jm = st.cfg.resolved_jmax()
    return [(f"depth/{i}/{j}", "t_depth", (i, j)) for i in range(ell(st.n)) for j in range(-1, jm + 1)]


# ---------------------------------------------------------------------------
# structure


@task
def t_canonical(st: RunState, i: int):
    n, N, g = st.n, st.ctx.nvars, g_of(st.n)
    s = time.monotonic()
    R = module_Mij(st.chain, i, 0)
    ext = ext_module(R, i, budget=st.budget()).hilbert
    out = []
    a = i - g + 1
    if a >= -1:
        side = module_Mij(st.chain, i, a, st.budget()).hilbert_series().shift(-(2 * n - 4))
        out.append(_cell(st, i, a, "canonical_hf", True, "theorem", ext == side, start=s,
                         note=f"HF Ext^{i}(R_i,S) vs HF M_{{i,{a}}}({2 * n - 4})"))
    else:
        out.append(_skipped(st, i, a, "canonical_hf", "needs M_{i,j} with j <= -2"))
    if i <= g - 1:
        ci = R.hilbert_series().shift(-2 * i)
        out.append(_cell(st, i, None, "canonical_hf_ci", True, "theorem", ext == ci,
                         note=f"complete intersection: Ext^{i}(R_i,S) = R_i({2 * i})"))
    return out


@task
def t_profile(st: RunState, i: int, j: int):
    n = st.n
    s = time.monotonic()
    M = module_Mij(st.chain, i, j, st.budget())
    prof = local_cohomology_profile(M, budget=st.budget())
    pred = sorted({predicted_depth(n, i, j), 2 * n - i})
    return [_cell(st, i, j, "lc_profile", pred, "theorem", sorted(prof.nonzero), start=s)]


def _finite_hf(series) -> dict[int, int] | None:
    if series.is_zero():
        return {}
    if not series.is_finite_length():
        return None
    return dict(series.support())


def _duality_legal(n: int, i: int, j: int) -> bool:
    g, L = g_of(n), ell(n)
    return j <= i - g + 2 and (i <= L - 2 or (i == L - 1 and j >= i - g))


@task
def t_duality(st: RunState, i: int, j: int):
    n, N, g = st.n, st.ctx.nvars, g_of(st.n)
    D = 2 * n - i
    T = 2 * (i - g - 1)
    a = i - g + 1 - j
    prov = "theorem" if _duality_legal(n, i, j) else "informative"
    note = "" if prov == "theorem" else "outside the range where the duality is claimed"
    Ma = module_Mij(st.chain, i, a, st.budget())
    Mj = module_Mij(st.chain, i, j, st.budget())
    out = []
    for p in range(2, D):
        s = time.monotonic()
        L = _finite_hf(ext_module(Ma, N - D - 1 + p, budget=st.budget()).hilbert)
        R = _finite_hf(ext_module(Mj, N - p, budget=st.budget()).hilbert)
        if L is None or R is None:
            ok = False
        else:
            lhs = {d - 2 * a + N: v for d, v in L.items()}
            rhs = {-d - T - N + 2 * j: v for d, v in R.items()}
            ok = lhs == rhs
        out.append(_cell(st, i, j, f"duality_eq2[p={p}]", True, prov, ok,
                         start=s, note=note))
    if n == 4 or st.cfg.heavy:
        s = time.monotonic()
        omega = canonical_module(st.chain.K(i), budget=st.budget())
        H = hom_module(Ma, omega, budget=st.budget())
        ok = H.hilbert_series() == Mj.hilbert_series().shift(4)
        out.append(_cell(st, i, j, "duality_eq1_hom_hf", True, prov, ok,
                         start=s, note=note or f"HF Hom(M_{{i,{a}}}, omega) vs HF M_{{i,{j}}}(-4)"))
    else:
        out.append(_skipped(st, i, j, "duality_eq1_hom_hf", "Hom computations need --heavy for n >= 5"))
    return out


@task
def t_regularity(st: RunState, i: int):
    s = time.monotonic()
    value, kind = predicted_regularity(st.n, i)
    r = regularity(module_Mij(st.chain, i, 0, st.budget()), st.budget())
    note = ""
    if kind == "conjecture" and g_of(st.n) + 1 < 5:
        note = "the conjecture is stated for g+1 >= 5; value shown for comparison only"
    return [_cell(st, i, 0, "regularity_R", value, kind, r, start=s, note=note)]


@task
def t_buchsbaum(st: RunState, i: int):
    n, N = st.n, st.ctx.nvars
    s = time.monotonic()
    R = module_Mij(st.chain, i, 0, st.budget())
    depth = 2 * n - 3 - i
    e = ext_module(R, N - depth, budget=st.budget())
    hf = _finite_hf(e.hilbert)
    length = sum(hf.values()) if hf is not None else None
    lc = {str(-d - N): v for d, v in hf.items()} if hf else {}
    return [_cell(st, i, 0, "buchsbaum_surrogate_length", 1, "theorem", length, start=s,
                  note=f"H^{depth}(R_i) graded pieces {lc}; module-level Buchsbaum property not settled")]


def structure_tasks(st: RunState) -> list[Task]:
    n, g, L = st.n, g_of(st.n), ell(st.n)
    jm = st.cfg.resolved_jmax()
    tasks: list[Task] = [(f"canonical/{i}", "t_canonical", (i,)) for i in range(L)]
    tasks += [(f"profile/{i}/{j}", "t_profile", (i, j)) for i in range(L) for j in (0, 1, -1)]
    for i in range(L):
        for j in range(-1, min(jm, i - g + 2) + 1):
            if i - g + 1 - j < -1:
                continue
            if _duality_legal(n, i, j) or i == L - 1:
                tasks.append((f"duality/{i}/{j}", "t_duality", (i, j)))
    tasks += [(f"regularity/{i}", "t_regularity", (i,)) for i in range(L)]
    if g + 1 <= L - 1:
        tasks.append((f"buchsbaum/{g + 1}", "t_buchsbaum", (g + 1,)))
    return tasks


# ---------------------------------------------------------------------------
# Betti numbers


@task
def t_top_betti_power(st: RunState, j: int):
    n = st.n
    s = time.monotonic()
    B = ModulePresentation.ideal(st.ctx.power_ideal(j), 0).resolution(budget=st.budget()).betti()
    mu = len(st.ctx.power_basis(j - 2))
    return [_cell(st, 0, j, "betti_top_I^j", mu, "theorem", B.beta(2 * n - 4), start=s,
                  note=f"beta_{2 * n - 4}(I^{j}) vs number of generators of I^{j - 2}")]


@task
def t_betti_cell(st: RunState, i: int, j: int):
    n = st.n
    s = time.monotonic()
    B = module_Mij(st.chain, i, j, st.budget()).resolution(budget=st.budget()).betti()
    k0 = linearity_start(n, i, j)
    out = [_cell(st, i, j, "linear_from", True, "theorem", linear_from_position(B, k0), start=s,
                 note=f"F_k generated in degree k for k >= {k0}")]
    if in_socle_range(n, i, j):
        top = 2 * n - 4
        pred = delta_power(st.h(max(j - 2, 0)), i, j - 2)
        out.append(_cell(st, i, j, "betti_top_socle", pred, "theorem", B.beta(top)))
        degs = B.degrees_at(top)
        out.append(_cell(st, i, j, "betti_top_degree", [top] if pred else [], "theorem", degs))
    return out


def betti_tasks(st: RunState) -> list[Task]:
    n = st.n
    jm = st.cfg.resolved_jmax()
    tasks: list[Task] = [(f"top_betti_power/{j}", "t_top_betti_power", (j,)) for j in range(2, jm + 1)]
    tasks += [(f"betti/{i}/{j}", "t_betti_cell", (i, j)) for i in range(ell(n)) for j in range(-1, jm + 1)]
    tasks.append(("regionB", "t_region_b", ()))
    return tasks


@task
def t_region_b(st: RunState):
    # region B needs g <= i <= ell - 5, which first happens at n = 7
    return [_skipped(st, None, None, "region_B_generators", "skipped: requires n >= 7")]


# ---------------------------------------------------------------------------
# asymptotics


@task
def t_asymptotics(st: RunState, jtop: int):
    n, N = st.n, st.ctx.nvars
    out, depths = [], {}
    for j in range(1, jtop + 1):
        s = time.monotonic()
        d, _ = depth_and_pd(ModulePresentation.ideal(st.ctx.power_ideal(j), 0), st.budget())
        depths[j] = d
        out.append(_cell(st, 0, j, "depth_I^j", predicted_depth(n, 0, j), "theorem", d, start=s))
    tail = depths[jtop]
    start_j = jtop
    while start_j > 1 and depths[start_j - 1] == tail:
        start_j -= 1
    out.append(_cell(st, None, None, "depth_I^j_stable_from", 2, "theorem", start_j,
                     note=f"within j <= {jtop}; stable value {tail}"))
    out.append(_cell(st, None, None, "spread_bound", ell(n), "theorem", N - tail + 1,
                     note=f"analytic spread {ell(n)} <= {N} - {tail} + 1, with equality"))
    return out


def asymptotics_tasks(st: RunState) -> list[Task]:
    return [("asymptotics", "t_asymptotics", (st.cfg.resolved_jmax() + 1,))]


# ---------------------------------------------------------------------------
# heavy spot cells at n = 5


@task
def t_depth_R(st: RunState, i: int):
    s = time.monotonic()
    d, _ = depth_and_pd(module_Mij(st.chain, i, 0, st.budget()), st.budget())
    return [_cell(st, i, 0, "depth", predicted_depth(st.n, i, 0), "theorem", d, start=s)]


def heavy_tasks(st: RunState, suites) -> list[Task]:
    """n >= 5: the spot cells that stay within a few hours."""
    n, L, g = st.n, ell(st.n), g_of(st.n)
    tasks: list[Task] = []
    if "foundations" in suites:
        tasks.append(("reduction", "t_reduction", ()))
        tasks += [(f"dim/{i}", "t_dim", (i,)) for i in range(L)]
        tasks += [(f"geom/{i}", "t_geometric", (i,)) for i in range(L)]
        tasks += [(f"extvan/{j}", "t_ext_vanishing", (j,)) for j in range(2, n - 2)]
    if "depth" in suites:
        tasks += [(f"depthR/{i}", "t_depth_R", (i,)) for i in range(g + 1, L)]
    for name in ("structure", "betti", "asymptotics"):
        if name in suites:
            tasks.append((f"{name}/n{n}", "t_out_of_scope", (name,)))
    return tasks


@task
def t_out_of_scope(st: RunState, name: str):
    return [_skipped(st, None, None, f"{name}_suite", f"not part of the n = {st.n} spot cells")]


# ---------------------------------------------------------------------------
# driver


def _suite_tasks(st: RunState, suites) -> list[Task]:
    if st.n >= 5:
        return heavy_tasks(st, suites)
    table = {"foundations": foundations_tasks, "depth": depth_tasks, "structure": structure_tasks,
             "betti": betti_tasks, "asymptotics": asymptotics_tasks}
    tasks: list[Task] = []
    for name in SUITES:
        if name in suites:
            tasks += [(f"{name}:{k}", fn, args) for k, fn, args in table[name](st)]
    return tasks


def run_verification(cfg: RunConfig, *, progress: Callable[[str], None] | None = None) -> VerificationReport:
    global _STATE
    if cfg.n >= 5 and not cfg.heavy:
        raise ValueError("n >= 5 runs only with heavy mode enabled")
    st = RunState(cfg)
    report = VerificationReport(st.manifest())
    tasks = _suite_tasks(st, cfg.suites)
    cache = CellCache(report.manifest) if cfg.use_cache else None
    results: dict[str, list[CellResult]] = {}
    pending = []
    for t in tasks:
        hit = cache.get(t[0]) if cache else None
        if hit is not None:
            results[t[0]] = [CellResult.from_json(c) for c in hit]
            if progress:
                progress(f"{t[0]}: cached")
        else:
            pending.append(t)

    def store(t, cells):
        results[t[0]] = cells
        if cache and all(c.status == "ok" or c.status == "skipped" for c in cells):
            cache.put(t[0], [c.to_json() for c in cells])
        if progress:
            progress(f"{t[0]}: " + ", ".join(f"{c.quantity}={'ok' if c.match else c.status if c.status != 'ok' else 'MISMATCH' if c.match is False else '-'}" for c in cells))

    if cfg.workers > 1 and len(pending) > 1:
        _STATE = st
        ctx = multiprocessing.get_context("fork")
        with ProcessPoolExecutor(max_workers=cfg.workers, mp_context=ctx) as pool:
            for t, cells in zip(pending, pool.map(_worker, pending)):
                store(t, [CellResult.from_json(c) for c in cells])
        _STATE = None
    else:
        for t in pending:
            store(t, _run_task(st, t))
    for t in tasks:
        report.cells.extend(results[t[0]])
    return report


# ---------------------------------------------------------------------------
# serialization


def depth_grid(report: VerificationReport) -> tuple[list[int], list[int], dict[tuple[int, int], CellResult]]:
    cells = {}
    for c in report.cells:
        if c.quantity == "depth" and c.status == "ok" and c.j is not None and (c.i, c.j) not in cells:
            cells[(c.i, c.j)] = c
    rows = sorted({i for i, _ in cells})
    cols = sorted({j for _, j in cells})
    return rows, cols, cells


def emit_report(report: VerificationReport, fmt: str = "json") -> str:
    if fmt == "json":
        return json.dumps(report.to_json(), sort_keys=True, indent=1) + "\n"
    if fmt == "csv":
        rows, cols, cells = depth_grid(report)
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["i\\j"] + cols)
        for i in rows:
            line = [i]
            for j in cols:
                c = cells.get((i, j))
                if c is None:
                    line.append("")
                elif c.match:
                    line.append(c.computed)
                else:
                    line.append(f"{c.computed}/{c.predicted}")
            w.writerow(line)
        return buf.getvalue()
    if fmt == "text":
        lines = [f"resint {__version__}  n={report.manifest['n']}  prime={report.manifest['prime']}  "
                 f"reduction={report.manifest['reduction']}"]
        for c in report.cells:
            if c.status != "ok":
                verdict = c.status.upper()
            elif c.match is None:
                verdict = "info"
            elif c.match:
                verdict = "ok"
            else:
                verdict = "FAIL" if c.fatal else "differs"
            where = f"i={c.i if c.i is not None else '-'} j={c.j if c.j is not None else '-'}"
            lines.append(f"{verdict:8} {c.quantity:32} {where:10} predicted={c.predicted} ({c.provenance}) "
                         f"computed={c.computed} [{c.source}]" + (f"  # {c.note}" if c.note else ""))
        rows, cols, cells = depth_grid(report)
        if cells:
            lines.append("")
            lines.append("depth of M_{i,j}: rows i, columns j")
            lines.append("      " + "".join(f"{j:>5}" for j in cols))
            for i in rows:
                lines.append(f"{i:>5} " + "".join(f"{cells[(i, j)].computed:>5}" if (i, j) in cells else "     "
                                                  for j in cols))
        s = report.summary
        lines.append("")
        lines.append("summary: " + ", ".join(f"{k}={v}" for k, v in s.items()))
        return "\n".join(lines) + "\n"
    raise ValueError(f"unknown format {fmt!r}")


def parse_report(text: str) -> VerificationReport:
    return VerificationReport.from_json(json.loads(text))


def strip_timing(data: dict) -> dict:
    """Copy of a JSON report without the timing fields."""
    data = json.loads(json.dumps(data))
    for c in data["cells"]:
        c.pop("timing", None)
    return data


def report_digest(report: VerificationReport) -> str:
    return digest(strip_timing(report.to_json()))


# individual suites, as named operations


def _suite(name: str, st: RunState) -> list[CellResult]:
    out = []
    for t in _suite_tasks(st, (name,)):
        out.extend(_run_task(st, t))
    return out


def verify_foundations(st: RunState) -> list[CellResult]:
    return _suite("foundations", st)


def verify_depth_table(st: RunState) -> list[CellResult]:
    return _suite("depth", st)


def verify_structure(st: RunState) -> list[CellResult]:
    return _suite("structure", st)


def verify_betti_lemmas(st: RunState) -> list[CellResult]:
    return _suite("betti", st)


def verify_asymptotics(st: RunState) -> list[CellResult]:
    return _suite("asymptotics", st)
