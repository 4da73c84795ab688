"""Hilbert series of graded quotients from initial monomial data."""

from __future__ import annotations

from math import comb
from typing import Iterable, Sequence


class HilbertSeries:
    """``numerator(t) / (1 - t)^dimension_of_ring`` with a Laurent numerator.

    The numerator is a dict ``{exponent: coefficient}``; negative exponents
    appear for modules with generators in negative degree.
    """

    __slots__ = ("num", "nvars")

    def __init__(self, num: dict[int, int] | Sequence[int], nvars: int):
        if not isinstance(num, dict):
            num = {e: c for e, c in enumerate(num)}
        self.num = {e: c for e, c in num.items() if c}
        self.nvars = nvars

    # algebra -----------------------------------------------------------
    def _align(self, other: "HilbertSeries"):
        a, b = self, other
        while a.nvars < b.nvars:
            a = a.times_one_minus_t()
        while b.nvars < a.nvars:
            b = b.times_one_minus_t()
        return a, b

    def times_one_minus_t(self) -> "HilbertSeries":
        out: dict[int, int] = {}
        for e, c in self.num.items():
            out[e] = out.get(e, 0) + c
            out[e + 1] = out.get(e + 1, 0) - c
        return HilbertSeries(out, self.nvars + 1)

    def __add__(self, other: "HilbertSeries") -> "HilbertSeries":
        a, b = self._align(other)
        out = dict(a.num)
        for e, c in b.num.items():
            out[e] = out.get(e, 0) + c
        return HilbertSeries(out, a.nvars)

    def __neg__(self):
        return HilbertSeries({e: -c for e, c in self.num.items()}, self.nvars)

    def __sub__(self, other: "HilbertSeries") -> "HilbertSeries":
        return self + (-other)

    def shift(self, k: int) -> "HilbertSeries":
        """Series of the twist ``M(-k)`` (multiply by ``t^k``)."""
        return HilbertSeries({e + k: c for e, c in self.num.items()}, self.nvars)

    def scale(self, c: int) -> "HilbertSeries":
        return HilbertSeries({e: c * v for e, v in self.num.items()}, self.nvars)

    def reduced(self) -> tuple[dict[int, int], int]:
        """Numerator and denominator exponent after cancelling ``(1 - t)``."""
        num = dict(self.num)
        d = self.nvars
        while num and d > 0 and sum(num.values()) == 0:
            # synthetic division by (1 - t)
            lo, hi = min(num), max(num)
            q: dict[int, int] = {}
            carry = 0
            for e in range(lo, hi):
                carry += num.get(e, 0)
                if carry:
                    q[e] = carry
            num = q
            d -= 1
        return num, d

    def __eq__(self, other):
        if not isinstance(other, HilbertSeries):
            return NotImplemented
        a, b = self._align(other)
        return a.num == b.num

    def __hash__(self):
        num, d = self.reduced()
        return hash((tuple(sorted(num.items())), d))

    def is_zero(self) -> bool:
        return not self.num

    # evaluation --------------------------------------------------------
    def hf(self, d: int) -> int:
        """Hilbert function value in degree ``d``."""
        num, n = self.reduced()
        if n == 0:
            return num.get(d, 0)
        return sum(c * comb(d - e + n - 1, n - 1) for e, c in num.items() if d >= e)

    def hf_range(self, lo: int, hi: int) -> dict[int, int]:
        return {d: self.hf(d) for d in range(lo, hi + 1)}

    def dimension(self) -> int:
        """Krull dimension (pole order at t = 1); -1 for the zero module."""
        num, n = self.reduced()
        return n if num else -1

    def multiplicity(self) -> int:
        num, _ = self.reduced()
        return sum(num.values())

    def is_finite_length(self) -> bool:
        return self.dimension() <= 0

    def support(self) -> dict[int, int]:
        """Graded pieces of a finite-length module."""
        num, n = self.reduced()
        if n != 0:
            raise ValueError("module is not of finite length")
        return dict(sorted(num.items()))

    def initial_degree(self) -> int | None:
        num, _ = self.reduced()
        return min(num) if num else None

    def __repr__(self):
        num, n = self.reduced()
        terms = " ".join(f"{c:+d}t^{e}" for e, c in sorted(num.items()))
        return f"HilbertSeries(({terms or '0'}) / (1-t)^{n})"

    def to_json(self) -> dict:
        num, n = self.reduced()
        return {"numerator": {str(e): c for e, c in sorted(num.items())}, "denominator_exponent": n}


# ---------------------------------------------------------------------------
# monomial ideals


def _minimize(gens: list[tuple[int, ...]]) -> list[tuple[int, ...]]:
    gens = sorted(set(gens), key=sum)
    out: list[tuple[int, ...]] = []
    for g in gens:
        if not any(all(a <= b for a, b in zip(h, g)) for h in out):
            out.append(g)
    return out


def _mul_poly(a: dict[int, int], b: dict[int, int]) -> dict[int, int]:
    out: dict[int, int] = {}
    for e1, c1 in a.items():
        for e2, c2 in b.items():
            out[e1 + e2] = out.get(e1 + e2, 0) + c1 * c2
    return {e: c for e, c in out.items() if c}


def _numerator(gens: list[tuple[int, ...]]) -> dict[int, int]:
    """Numerator of the Hilbert series of ``S / (gens)`` (minimal gens)."""
    r = len(gens)
    if r == 0:
        return {0: 1}
    if r == 1:
        d = sum(gens[0])
        return {0: 1, d: -1} if d else {}
    if r == 2:
        a, b = gens
        l = sum(max(x, y) for x, y in zip(a, b))
        out: dict[int, int] = {0: 1}
        for e in (sum(a), sum(b)):
            out[e] = out.get(e, 0) - 1
        out[l] = out.get(l, 0) + 1
        return {e: c for e, c in out.items() if c}
    nv = len(gens[0])
    counts = [0] * nv
    for g in gens:
        for v, e in enumerate(g):
            if e:
                counts[v] += 1
    v = max(range(nv), key=lambda i: counts[i])
    if counts[v] <= 1:
        # pairwise coprime generators
        out = {0: 1}
        for g in gens:
            out = _mul_poly(out, {0: 1, sum(g): -1})
        return out
    exps = sorted(g[v] for g in gens if g[v])
    e = exps[len(exps) // 2]
    pivot = tuple(e if i == v else 0 for i in range(nv))
    if pivot in gens:
        # a pure power cannot be the pivot; the smallest exponent always splits
        e = exps[0]
        pivot = tuple(e if i == v else 0 for i in range(nv))
    # I + (pivot)
    plus = [g for g in gens if g[v] < e] + [pivot]
    # I : pivot
    colon = [tuple(max(x - e, 0) if i == v else x for i, x in enumerate(g)) for g in gens]
    a = _numerator(_minimize(plus))
    b = _numerator(_minimize(colon))
    out = dict(a)
    for k, c in b.items():
        out[k + e] = out.get(k + e, 0) + c
    return {k: c for k, c in out.items() if c}


def monomial_quotient_series(gens: Iterable[Sequence[int]], nvars: int) -> HilbertSeries:
    """Hilbert series of ``S / (monomials)`` for the standard grading."""
    gl = _minimize([tuple(g) for g in gens])
    if any(sum(g) == 0 for g in gl):
        return HilbertSeries({}, nvars)
    return HilbertSeries(_numerator(gl), nvars)


def free_module_series(degrees: Sequence[int], nvars: int) -> HilbertSeries:
    num: dict[int, int] = {}
    for d in degrees:
        num[d] = num.get(d, 0) + 1
    return HilbertSeries(num, nvars)


def module_quotient_series(lead_by_pos: dict[int, list[Sequence[int]]], degrees: Sequence[int],
                           nvars: int) -> HilbertSeries:
    """Hilbert series of ``F / U`` where ``U`` has the given initial terms per position."""
    total = HilbertSeries({}, nvars)
    for s, d in enumerate(degrees):
        total = total + monomial_quotient_series(lead_by_pos.get(s, []), nvars).shift(d)
    return total

