"""Graded free modules over a polynomial ring and their term encodings.

A term ``m * e_s`` of a free module is one int key:

    key = base[s] + ((key(m) - one) << (P * level))

where the low ``P`` bits of every key hold the position ``s``.  For a
module at level 1 (term-over-position order) ``base[s]`` carries the
twist of ``e_s`` in the degree field of a fake ring monomial, so keys
compare first by total degree, then by the ring order, then by position.
For a Schreyer module at level ``L + 1`` over a module at level ``L``,
``base[s]`` embeds the key of the lead term of the ``s``-th generator
image, so ``m * e_s`` compares like ``m * lead(g_s)`` with ties broken by
``s``.  Multiplying any term by a ring monomial is one integer addition,
the same at every level.
"""

from __future__ import annotations

from typing import Sequence

from .ring import PolyRing, Polynomial

P_BITS = 20
P_MASK = (1 << P_BITS) - 1
DEG_OFFSET = 1 << 12


class FreeModule:
    """Graded free module ``sum_s S(-deg_s)`` with an encoded term order."""

    __slots__ = ("ring", "degrees", "level", "base", "shift", "parent", "lead_keys")

    def __init__(self, ring: PolyRing, degrees: Sequence[int], level: int, base: list[int],
                 parent: "FreeModule | None" = None, lead_keys: Sequence[int] | None = None):
        if len(degrees) >= P_MASK:
            raise OverflowError("too many module generators")
        self.ring = ring
        self.degrees = tuple(degrees)
        self.level = level
        self.base = base
        self.shift = P_BITS * level
        self.parent = parent
        self.lead_keys = tuple(lead_keys) if lead_keys is not None else None

    # construction -------------------------------------------------------
    @classmethod
    def top(cls, ring: PolyRing, degrees: Sequence[int]) -> "FreeModule":
        """Term-over-position order; ``degrees[s]`` is the degree of ``e_s``."""
        codec = ring.codec
        base = []
        for s, d in enumerate(degrees):
            pre = codec.one
            if codec.top is not None:
                pre += (d + DEG_OFFSET) << codec.top
            base.append((pre << P_BITS) | s)
        return cls(ring, degrees, 1, base)

    @classmethod
    def schreyer(cls, parent: "FreeModule", lead_keys: Sequence[int]) -> "FreeModule":
        """Order induced by the lead terms (keys in ``parent``) of the generator images."""
        base = [(k << P_BITS) | s for s, k in enumerate(lead_keys)]
        degrees = [parent.degree(k) for k in lead_keys]
        return cls(parent.ring, degrees, parent.level + 1, base, parent, lead_keys)

    @property
    def rank(self) -> int:
        return len(self.degrees)

    def __repr__(self):
        return f"FreeModule(rank={self.rank}, level={self.level}, degrees={self.degrees})"

    # term codec -------------------------------------------------------
    def term(self, s: int, mono_key: int) -> int:
        return self.base[s] + ((mono_key - self.ring.codec.one) << self.shift)

    def gen_key(self, s: int) -> int:
        return self.base[s]

    def split(self, key: int) -> tuple[int, int]:
        """``(position, ring monomial key)`` of a module term key."""
        s = key & P_MASK
        return s, ((key - self.base[s]) >> self.shift) + self.ring.codec.one

    def degree(self, key: int) -> int:
        codec = self.ring.codec
        if codec.top is not None:
            return (key >> (self.shift + codec.top)) - DEG_OFFSET
        s, m = self.split(key)
        return self.degrees[s] + codec.wdeg(m)

    def lcm(self, ka: int, kb: int) -> int:
        s, ma = self.split(ka)
        _, mb = self.split(kb)
        return self.term(s, self.ring.codec.lcm(ma, mb))

    # conversion -----------------------------------------------------------
    def from_columns(self, entries: Sequence[Polynomial]) -> tuple:
        """Vector with the given polynomial entries (one per generator)."""
        if len(entries) != self.rank:
            raise ValueError("wrong number of entries")
        out = []
        one = self.ring.codec.one
        sh = self.shift
        for s, f in enumerate(entries):
            b = self.base[s]
            out.extend((b + ((k - one) << sh), c) for k, c in f.terms)
        out.sort(reverse=True)
        return tuple(out)

    def from_sparse(self, entries: dict[int, Polynomial]) -> tuple:
        out = []
        one = self.ring.codec.one
        sh = self.shift
        for s, f in entries.items():
            b = self.base[s]
            out.extend((b + ((k - one) << sh), c) for k, c in f.terms)
        out.sort(reverse=True)
        return tuple(out)

    def to_columns(self, vec) -> list[Polynomial]:
        parts: list[dict] = [dict() for _ in range(self.rank)]
        one = self.ring.codec.one
        sh = self.shift
        base = self.base
        for k, c in vec:
            s = k & P_MASK
            parts[s][((k - base[s]) >> sh) + one] = c
        return [self.ring.from_dict(d) for d in parts]

    def to_sparse(self, vec) -> dict[int, Polynomial]:
        parts: dict[int, dict] = {}
        one = self.ring.codec.one
        sh = self.shift
        base = self.base
        for k, c in vec:
            s = k & P_MASK
            parts.setdefault(s, {})[((k - base[s]) >> sh) + one] = c
        return {s: self.ring.from_dict(d) for s, d in parts.items()}

    def recode(self, vec, target: "FreeModule") -> tuple:
        """Same vector expressed in another free module with the same rank."""
        one = self.ring.codec.one
        sh, tsh = self.shift, target.shift
        base, tbase = self.base, target.base
        out = []
        for k, c in vec:
            s = k & P_MASK
            out.append((tbase[s] + (((k - base[s]) >> sh) << tsh), c))
        out.sort(reverse=True)
        return tuple(out)

    def vec_degree(self, vec) -> int:
        return self.degree(vec[0][0]) if vec else -1

    def is_homogeneous(self, vec) -> bool:
        if not vec:
            return True
        d = self.degree(vec[0][0])
        return all(self.degree(k) == d for k, _ in vec)


# vector arithmetic ----------------------------------------------------------


def vec_add(a, b, p):
    acc = dict(a)
    for k, c in b:
        acc[k] = acc.get(k, 0) + c
    return _finish(acc, p)


def vec_sub(a, b, p):
    acc = dict(a)
    for k, c in b:
        acc[k] = acc.get(k, 0) - c
    return _finish(acc, p)


def vec_scale(a, c, p):
    if p is not None:
        c %= p
        if not c:
            return ()
        return tuple((k, (x * c) % p) for k, x in a)
    if not c:
        return ()
    return tuple((k, x * c) for k, x in a)


def vec_shift(a, delta):
    """Multiply by a monomial given as a key difference at the vector's level."""
    return tuple((k + delta, c) for k, c in a)


def vec_mul_poly(module: FreeModule, vec, f: Polynomial, p):
    """``f * vec``."""
    if not vec or not f.terms:
        return ()
    one = module.ring.codec.one
    sh = module.shift
    acc: dict[int, object] = {}
    get = acc.get
    for mk, mc in f.terms:
        d = (mk - one) << sh
        for k, c in vec:
            nk = k + d
            acc[nk] = get(nk, 0) + mc * c
    return _finish(acc, p)


def vec_combine(module: FreeModule, coeffs: dict[int, Polynomial], vecs, p):
    """``sum_i coeffs[i] * vecs[i]``."""
    one = module.ring.codec.one
    sh = module.shift
    acc: dict[int, object] = {}
    get = acc.get
    for i, f in coeffs.items():
        v = vecs[i]
        for mk, mc in f.terms:
            d = (mk - one) << sh
            for k, c in v:
                nk = k + d
                acc[nk] = get(nk, 0) + mc * c
    return _finish(acc, p)


def _finish(acc, p):
    if p is not None:
        items = [(k, c % p) for k, c in acc.items() if c % p]
    else:
        items = [(k, c) for k, c in acc.items() if c]
    items.sort(reverse=True)
    return tuple(items)
