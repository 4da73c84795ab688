"""Monomials, term orders, polynomial rings and polynomials.

A monomial is stored as a single non-negative int (its *key*) laid out so
that comparing keys as ints is exactly the term order, multiplying two
monomials is ``ka + kb - one`` and divisibility is one guard-bit
subtraction.  Every exponent occupies one byte holding ``MAXEXP - e``
(bit 7 is a guard bit and always clear); a degree field sits above the
exponent bytes for degree-first orders.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from .field import CoefficientField

MAXEXP = 127
_BYTE = 8


@dataclass(frozen=True)
class TermOrder:
    """A term order on monomials.

    ``degrevlex`` is graded reverse lexicographic.  ``block`` compares the
    first ``block`` variables by degrevlex, then the rest by degrevlex; it
    is an elimination order for the first block.  With ``degree_first``
    the (weighted) total degree is compared before the blocks, which is
    still an elimination order on inputs homogeneous for the weights.
    """

    kind: str = "degrevlex"
    block: int = 0
    degree_first: bool = True

    @classmethod
    def degrevlex(cls) -> "TermOrder":
        return cls("degrevlex", 0, True)

    @classmethod
    def elimination(cls, first_block: int, degree_first: bool = False) -> "TermOrder":
        if first_block < 1:
            raise ValueError("first block must be nonempty")
        return cls("block", first_block, degree_first)

    def __str__(self):
        if self.kind == "degrevlex":
            return "degrevlex"
        return f"block({self.block}{',deg' if self.degree_first else ''})"


class MonomialCodec:
    """Bit layout of monomial keys for one ring and term order."""

    def __init__(self, nvars: int, order: TermOrder, weights: Sequence[int]):
        self.nvars = n = nvars
        self.order = order
        self.weights = tuple(weights)
        if order.kind == "degrevlex":
            blocks = [(0, n)]
        elif order.kind == "block":
            if not 0 < order.block < n:
                raise ValueError("block size must be between 1 and nvars-1")
            blocks = [(0, order.block), (order.block, n)]
        else:
            raise ValueError(f"unsupported ring order {order.kind!r}")
        self.blocks = blocks
        self.var_off = [0] * n
        self.deg_off: list[int | None] = [None] * len(blocks)
        off = 0
        multi = len(blocks) > 1
        for b in reversed(range(len(blocks))):
            lo, hi = blocks[b]
            for v in range(lo, hi):
                self.var_off[v] = off
                off += _BYTE
            if multi:
                self.deg_off[b] = off
                off += 16
        self.top = off if order.degree_first else None
        self.comp_mask = sum(0xFF << o for o in self.var_off)
        self.guard = sum(0x80 << o for o in self.var_off)
        self.contiguous = not multi
        self.unit_weights = all(w == 1 for w in self.weights)
        self.one = self.encode((0,) * n)

    def encode(self, exps: Sequence[int]) -> int:
        key = 0
        for v, e in enumerate(exps):
            if e < 0 or e > MAXEXP:
                raise OverflowError(f"exponent {e} outside [0, {MAXEXP}]")
            key |= (MAXEXP - e) << self.var_off[v]
        for b, (lo, hi) in enumerate(self.blocks):
            if self.deg_off[b] is not None:
                key |= sum(exps[lo:hi]) << self.deg_off[b]
        if self.top is not None:
            key |= sum(w * e for w, e in zip(self.weights, exps)) << self.top
        return key

    def decode(self, key: int) -> tuple[int, ...]:
        if self.contiguous:
            raw = (key & self.comp_mask).to_bytes(self.nvars, "little")
            return tuple(MAXEXP - b for b in raw)
        return tuple(MAXEXP - ((key >> o) & 0xFF) for o in self.var_off)

    def wdeg(self, key: int) -> int:
        """Weighted degree of a monomial key."""
        if self.top is not None:
            return key >> self.top
        return sum(w * e for w, e in zip(self.weights, self.decode(key)))

    def tdeg(self, key: int) -> int:
        """Unweighted total degree."""
        if self.contiguous:
            raw = (key & self.comp_mask).to_bytes(self.nvars, "little")
            return self.nvars * MAXEXP - sum(raw)
        return sum(self.decode(key))

    def divides(self, ka: int, kb: int) -> bool:
        cm = self.comp_mask
        g = self.guard
        return (((ka & cm) | g) - (kb & cm)) & g == g

    def lcm(self, ka: int, kb: int) -> int:
        cm = self.comp_mask
        ca = ka & cm
        cb = kb & cm
        ge = (((ca | self.guard) - cb) & self.guard) >> 7
        mask = ge * 0xFF
        cmin = (cb & mask) | (ca & ~mask & cm)
        if self.contiguous and self.unit_weights:
            deg = self.nvars * MAXEXP - sum(cmin.to_bytes(self.nvars, "little"))
            return (deg << self.top) | cmin
        return self.encode(self.decode(cmin))

    def coprime(self, ka: int, kb: int) -> bool:
        a = self.decode(ka)
        b = self.decode(kb)
        return all(x == 0 or y == 0 for x, y in zip(a, b))


class PolyRing:
    """Polynomial ring over a coefficient field with named variables.

    All rings used by the verification code are standard graded; other
    weights exist only for internal auxiliary rings (e.g. an elimination
    variable of weight 0).
    """

    def __init__(
        self,
        var_names: Sequence[str],
        field: CoefficientField | None = None,
        order: TermOrder | None = None,
        weights: Sequence[int] | None = None,
    ):
        self.var_names = tuple(var_names)
        if len(set(self.var_names)) != len(self.var_names):
            raise ValueError("variable names must be distinct")
        self.field = field or CoefficientField.prime()
        self.order = order or TermOrder.degrevlex()
        self.weights = tuple(weights) if weights is not None else (1,) * len(self.var_names)
        if len(self.weights) != len(self.var_names):
            raise ValueError("one weight per variable")
        self.codec = MonomialCodec(len(self.var_names), self.order, self.weights)
        self._index = {name: i for i, name in enumerate(self.var_names)}

    @property
    def nvars(self) -> int:
        return len(self.var_names)

    @property
    def p(self):
        return self.field.p

    def signature(self) -> str:
        return f"{self.field}|{self.order}|{','.join(self.var_names)}|{self.weights}"

    def __eq__(self, other):
        return isinstance(other, PolyRing) and self.signature() == other.signature()

    def __hash__(self):
        return hash(self.signature())

    def __repr__(self):
        return f"PolyRing({len(self.var_names)} vars, {self.field}, {self.order})"

    # construction -----------------------------------------------------
    def from_dict(self, d: dict[int, object]) -> "Polynomial":
        """Polynomial from ``{key: coeff}``; zero coefficients are dropped."""
        p = self.field.p
        if p is not None:
            items = [(k, c % p) for k, c in d.items() if c % p]
        else:
            items = [(k, c) for k, c in d.items() if c]
        items.sort(reverse=True)
        return Polynomial(self, tuple(items))

    def from_exponents(self, terms: Iterable[tuple[Sequence[int], object]]) -> "Polynomial":
        acc: dict[int, object] = {}
        enc = self.codec.encode
        for exps, c in terms:
            k = enc(exps)
            acc[k] = acc.get(k, 0) + self.field(c)
        return self.from_dict(acc)

    def zero(self) -> "Polynomial":
        return Polynomial(self, ())

    def one(self) -> "Polynomial":
        return self.constant(1)

    def constant(self, c) -> "Polynomial":
        c = self.field(c)
        return Polynomial(self, ((self.codec.one, c),) if c else ())

    def var(self, which: int | str) -> "Polynomial":
        i = self._index[which] if isinstance(which, str) else which
        exps = [0] * self.nvars
        exps[i] = 1
        return Polynomial(self, ((self.codec.encode(exps), self.field(1)),))

    def gens(self) -> list["Polynomial"]:
        return [self.var(i) for i in range(self.nvars)]

    def monomial(self, exps: Sequence[int], c=1) -> "Polynomial":
        return self.from_exponents([(exps, c)])

    def parse(self, text: str) -> "Polynomial":
        return _Parser(self, text).parse()

    def index(self, name: str) -> int:
        return self._index[name]

    def convert(self, f: "Polynomial") -> "Polynomial":
        """Re-encode a polynomial of a ring with the same variables (or a prefix-free
        superset handled by the caller) into this ring."""
        if f.ring is self:
            return f
        dec = f.ring.codec.decode
        names = f.ring.var_names
        pos = [self._index[nm] for nm in names]
        out: dict[int, object] = {}
        enc = self.codec.encode
        for k, c in f.terms:
            e = [0] * self.nvars
            for i, x in zip(pos, dec(k)):
                e[i] = x
            out[enc(e)] = self.field(c)
        return self.from_dict(out)


class Polynomial:
    """Immutable polynomial: terms sorted strictly decreasing in the ring order."""

    __slots__ = ("ring", "terms", "_hash")

    def __init__(self, ring: PolyRing, terms: tuple):
        self.ring = ring
        self.terms = terms
        self._hash = None

    # basic accessors ----------------------------------------------------
    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def __len__(self):
        return len(self.terms)

    @property
    def lead_key(self) -> int:
        return self.terms[0][0]

    @property
    def lead_coeff(self):
        return self.terms[0][1]

    def lead_exponents(self) -> tuple[int, ...]:
        return self.ring.codec.decode(self.terms[0][0])

    def exponents(self) -> list[tuple[tuple[int, ...], object]]:
        dec = self.ring.codec.decode
        return [(dec(k), c) for k, c in self.terms]

    def degree(self) -> int:
        """Maximum weighted degree of a term (-1 for zero)."""
        if not self.terms:
            return -1
        wd = self.ring.codec.wdeg
        return max(wd(k) for k, _ in self.terms)

    def is_homogeneous(self) -> bool:
        if not self.terms:
            return True
        wd = self.ring.codec.wdeg
        d = wd(self.terms[0][0])
        return all(wd(k) == d for k, _ in self.terms)

    def is_constant(self) -> bool:
        return not self.terms or (len(self.terms) == 1 and self.terms[0][0] == self.ring.codec.one)

    def constant_coeff(self):
        for k, c in self.terms:
            if k == self.ring.codec.one:
                return c
        return 0

    # arithmetic ---------------------------------------------------------
    def _check(self, other: "Polynomial"):
        if other.ring is not self.ring and other.ring != self.ring:
            raise ValueError("polynomials live in different rings")

    def _coerce(self, other) -> "Polynomial":
        if isinstance(other, Polynomial):
            self._check(other)
            return other
        if isinstance(other, (int, Fraction)):
            return self.ring.constant(other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        acc = dict(self.terms)
        for k, c in other.terms:
            acc[k] = acc.get(k, 0) + c
        return self.ring.from_dict(acc)

    __radd__ = __add__

    def __neg__(self):
        p = self.ring.field.p
        if p is not None:
            return Polynomial(self.ring, tuple((k, p - c) for k, c in self.terms))
        return Polynomial(self.ring, tuple((k, -c) for k, c in self.terms))

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        acc = dict(self.terms)
        for k, c in other.terms:
            acc[k] = acc.get(k, 0) - c
        return self.ring.from_dict(acc)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        if not self.terms or not other.terms:
            return self.ring.zero()
        codec = self.ring.codec
        if _max_tdeg(self) + _max_tdeg(other) > MAXEXP:
            raise OverflowError("product degree exceeds exponent capacity")
        one = codec.one
        p = self.ring.field.p
        acc: dict[int, object] = {}
        get = acc.get
        for ka, ca in self.terms:
            base = ka - one
            for kb, cb in other.terms:
                k = base + kb
                acc[k] = get(k, 0) + ca * cb
        return self.ring.from_dict(acc)

    __rmul__ = __mul__

    def __pow__(self, e: int):
        if e < 0:
            raise ValueError("negative exponent")
        out = self.ring.one()
        base = self
        while e:
            if e & 1:
                out = out * base
            e >>= 1
            if e:
                base = base * base
        return out

    def scale(self, c) -> "Polynomial":
        c = self.ring.field(c)
        if not c:
            return self.ring.zero()
        p = self.ring.field.p
        if p is not None:
            return Polynomial(self.ring, tuple((k, (x * c) % p) for k, x in self.terms))
        return Polynomial(self.ring, tuple((k, x * c) for k, x in self.terms))

    def monic(self) -> "Polynomial":
        if not self.terms:
            return self
        return self.scale(self.ring.field.inv(self.terms[0][1]))

    def shift(self, mono_key: int) -> "Polynomial":
        """Multiply by the monomial with the given key."""
        d = mono_key - self.ring.codec.one
        return Polynomial(self.ring, tuple((k + d, c) for k, c in self.terms))

    # comparison ---------------------------------------------------------
    def __eq__(self, other):
        if isinstance(other, Polynomial):
            return self.ring == other.ring and self.terms == other.terms
        if isinstance(other, (int, Fraction)):
            return self == self.ring.constant(other)
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(self.terms)
        return self._hash

    # text ---------------------------------------------------------------
    def __str__(self):
        return format_polynomial(self)

    def __repr__(self):
        return f"Polynomial({format_polynomial(self)!r})"


def _max_tdeg(f: Polynomial) -> int:
    td = f.ring.codec.tdeg
    return max(td(k) for k, _ in f.terms)


# ---------------------------------------------------------------------------
# text format


def _format_monomial(names, exps) -> str:
    parts = []
    for name, e in zip(names, exps):
        if e == 1:
            parts.append(name)
        elif e > 1:
            parts.append(f"{name}^{e}")
    return "*".join(parts)


def format_polynomial(f: Polynomial) -> str:
    if not f.terms:
        return "0"
    ring = f.ring
    names = ring.var_names
    dec = ring.codec.decode
    out = []
    for i, (k, c) in enumerate(f.terms):
        c = ring.field.symmetric(c)
        neg = c < 0
        a = -c if neg else c
        mono = _format_monomial(names, dec(k))
        if not mono:
            body = str(a)
        elif a == 1:
            body = mono
        else:
            body = f"{a}*{mono}"
        if i == 0:
            out.append(f"-{body}" if neg else body)
        else:
            out.append(f" - {body}" if neg else f" + {body}")
    return "".join(out)


_TOKEN = re.compile(
    r"\s*(?:(?P<num>\d+(?:/\d+)?)|(?P<name>[A-Za-z_][A-Za-z_0-9]*(?:\[\s*\d+(?:\s*,\s*\d+)*\s*\])?)|(?P<op>[-+*^()]))"
)


class _Parser:
    """Recursive-descent parser for ``+ - * ^`` expressions with parentheses."""

    def __init__(self, ring: PolyRing, text: str):
        self.ring = ring
        self.tokens = []
        pos = 0
        text = text.strip()
        while pos < len(text):
            m = _TOKEN.match(text, pos)
            if not m or m.end() == pos:
                raise ValueError(f"cannot parse polynomial near {text[pos:pos + 12]!r}")
            pos = m.end()
            if m.group("num"):
                self.tokens.append(("num", m.group("num")))
            elif m.group("name"):
                self.tokens.append(("name", re.sub(r"\s+", "", m.group("name"))))
            else:
                self.tokens.append(("op", m.group("op")))
        self.i = 0

    def _peek(self):
        return self.tokens[self.i] if self.i < len(self.tokens) else (None, None)

    def _take(self):
        tok = self._peek()
        self.i += 1
        return tok

    def parse(self) -> Polynomial:
        if not self.tokens:
            raise ValueError("empty polynomial text")
        f = self._expr()
        if self.i != len(self.tokens):
            raise ValueError(f"unexpected token {self._peek()[1]!r}")
        return f

    def _expr(self) -> Polynomial:
        kind, val = self._peek()
        sign = 1
        if kind == "op" and val in "+-":
            self._take()
            sign = -1 if val == "-" else 1
        f = self._term()
        if sign < 0:
            f = -f
        while True:
            kind, val = self._peek()
            if kind == "op" and val in "+-":
                self._take()
                g = self._term()
                f = f + g if val == "+" else f - g
            else:
                return f

    def _term(self) -> Polynomial:
        f = self._factor()
        while True:
            kind, val = self._peek()
            if kind == "op" and val == "*":
                self._take()
                f = f * self._factor()
            else:
                return f

    def _factor(self) -> Polynomial:
        base = self._atom()
        kind, val = self._peek()
        if kind == "op" and val == "^":
            self._take()
            k, v = self._take()
            if k != "num" or "/" in v:
                raise ValueError("exponent must be a non-negative integer")
            return base ** int(v)
        return base

    def _atom(self) -> Polynomial:
        kind, val = self._take()
        if kind == "num":
            if "/" in val:
                a, b = val.split("/")
                return self.ring.constant(Fraction(int(a), int(b)))
            return self.ring.constant(int(val))
        if kind == "name":
            if val not in self.ring._index:
                raise ValueError(f"unknown variable {val!r}")
            return self.ring.var(val)
        if kind == "op" and val == "(":
            f = self._expr()
            k, v = self._take()
            if (k, v) != ("op", ")"):
                raise ValueError("missing closing parenthesis")
            return f
        if kind == "op" and val == "-":
            return -self._atom()
        raise ValueError(f"unexpected token {val!r}")


def compare_monomials(ring: PolyRing, a: Sequence[int], b: Sequence[int]) -> int:
    """-1, 0 or 1 as monomial ``a`` is below, equal to or above ``b``."""
    ka = ring.codec.encode(a)
    kb = ring.codec.encode(b)
    return (ka > kb) - (ka < kb)
