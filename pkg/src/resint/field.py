"""Exact coefficient fields: a prime field GF(p) or the rationals."""

from __future__ import annotations

from fractions import Fraction

DEFAULT_PRIME = 32003


def _is_prime(p: int) -> bool:
    if p < 2:
        return False
    if p % 2 == 0:
        return p == 2
    d = 3
    while d * d <= p:
        if p % d == 0:
            return False
        d += 2
    return True


class CoefficientField:
    """Coefficient arithmetic used by every polynomial in a ring.

    For a prime field coefficients are plain ints in ``[0, p)``; for the
    rationals they are :class:`fractions.Fraction`.  The hot loops of the
    Groebner engine read ``field.p`` directly and only fall back to
    Fraction arithmetic when it is ``None``.
    """

    __slots__ = ("kind", "p")

    def __init__(self, kind: str = "prime", p: int | None = DEFAULT_PRIME):
        if kind == "prime":
            if p is None or not _is_prime(p):
                raise ValueError(f"modulus {p!r} is not prime")
            self.p = p
        elif kind == "rational":
            self.p = None
        else:
            raise ValueError(f"unknown field kind {kind!r}")
        self.kind = kind

    @classmethod
    def prime(cls, p: int = DEFAULT_PRIME) -> "CoefficientField":
        return cls("prime", p)

    @classmethod
    def rationals(cls) -> "CoefficientField":
        return cls("rational", None)

    def __call__(self, x):
        if self.p is not None:
            if isinstance(x, Fraction):
                return (x.numerator * pow(x.denominator, -1, self.p)) % self.p
            return int(x) % self.p
        return Fraction(x)

    def inv(self, x):
        if not x:
            raise ZeroDivisionError("inverse of zero")
        if self.p is not None:
            return pow(x, -1, self.p)
        return 1 / Fraction(x)

    def neg(self, x):
        return (-x) % self.p if self.p is not None else -x

    def symmetric(self, x) -> int | Fraction:
        """Representative used for printing: ``(-p/2, p/2]`` for GF(p)."""
        if self.p is None:
            return x
        return x - self.p if x > self.p // 2 else x

    def __eq__(self, other):
        return isinstance(other, CoefficientField) and (self.kind, self.p) == (other.kind, other.p)

    def __hash__(self):
        return hash((self.kind, self.p))

    def __repr__(self):
        return f"GF({self.p})" if self.p is not None else "QQ"
