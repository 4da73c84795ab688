"""Exact sparse linear algebra on spans of polynomials of one degree."""

from __future__ import annotations

from typing import Sequence

from .field import CoefficientField
from .ring import Polynomial


class EchelonSpan:
    """Incremental row echelon form of polynomials viewed as coefficient vectors.

    Each stored row remembers which combination of the inserted vectors
    produced it, so membership tests can return coordinates.
    """

    def __init__(self, field: CoefficientField, track: bool = False):
        self.field = field
        self.track = track
        self.rows: dict[int, dict[int, object]] = {}  # pivot column -> row (pivot coefficient 1)
        self.combos: dict[int, dict[int, object]] = {}
        self.count = 0

    def _reduce(self, vec: dict[int, object], combo: dict[int, object] | None):
        p = self.field.p
        vec = dict(vec)
        while vec:
            # pivot on the largest column still present that has a stored row
            hit = None
            for col in sorted(vec, reverse=True):
                if col in self.rows:
                    hit = col
                    break
            if hit is None:
                break
            c = vec[hit]
            row = self.rows[hit]
            for k, v in row.items():
                nv = vec.get(k, 0) - c * v
                if p is not None:
                    nv %= p
                if nv:
                    vec[k] = nv
                else:
                    vec.pop(k, None)
            if combo is not None:
                for k, v in self.combos[hit].items():
                    nv = combo.get(k, 0) - c * v
                    if p is not None:
                        nv %= p
                    if nv:
                        combo[k] = nv
                    else:
                        combo.pop(k, None)
        return vec, combo

    def add(self, vec: dict[int, object]) -> bool:
        """Insert a vector; returns True if it enlarged the span."""
        idx = self.count
        self.count += 1
        combo = {idx: 1} if self.track else None
        vec, combo = self._reduce(vec, combo)
        if not vec:
            return False
        piv = max(vec)
        inv = self.field.inv(vec[piv])
        p = self.field.p
        row = {k: (v * inv) % p if p is not None else v * inv for k, v in vec.items()}
        # keep rows fully reduced against the new pivot
        for col, r in self.rows.items():
            c = r.get(piv)
            if c:
                for k, v in row.items():
                    nv = r.get(k, 0) - c * v
                    if p is not None:
                        nv %= p
                    if nv:
                        r[k] = nv
                    else:
                        r.pop(k, None)
                if self.track:
                    cr = self.combos[col]
                    for k, v in combo.items():
                        nv = cr.get(k, 0) - c * v * inv
                        if p is not None:
                            nv %= p
                        if nv:
                            cr[k] = nv
                        else:
                            cr.pop(k, None)
        self.rows[piv] = row
        if self.track:
            self.combos[piv] = {k: (v * inv) % p if p is not None else v * inv for k, v in combo.items()}
        return True

    @property
    def rank(self) -> int:
        return len(self.rows)

    def coordinates(self, vec: dict[int, object]) -> dict[int, object] | None:
        """Coefficients ``c`` with ``vec = sum c[i] * inserted[i]``, or None if outside the span."""
        if not self.track:
            raise ValueError("span was built without tracking")
        rem, combo = self._reduce(vec, {})
        if rem:
            return None
        p = self.field.p
        return {k: (-v) % p if p is not None else -v for k, v in combo.items() if v}

    def contains(self, vec: dict[int, object]) -> bool:
        rem, _ = self._reduce(vec, None)
        return not rem


def poly_vector(f: Polynomial) -> dict[int, object]:
    return dict(f.terms)


def span_rank(polys: Sequence[Polynomial]) -> int:
    if not polys:
        return 0
    span = EchelonSpan(polys[0].ring.field)
    for f in polys:
        span.add(poly_vector(f))
    return span.rank


def independent_subset(polys: Sequence[Polynomial]) -> list[int]:
    """Indices of a maximal linearly independent subset (greedy, in order)."""
    if not polys:
        return []
    span = EchelonSpan(polys[0].ring.field)
    return [i for i, f in enumerate(polys) if span.add(poly_vector(f))]
