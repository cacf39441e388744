"""Exact coefficient fields: prime fields F_p and the rationals.

No floating point anywhere. Prime-field elements are canonical integers in
[0, p); rational elements are fractions.Fraction. Field objects are
immutable and shared.
"""

from __future__ import annotations

from fractions import Fraction


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n < 4:
        return True
    if n % 2 == 0:
        return False
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


class PrimeField:
    """The field F_p, elements stored as ints in [0, p)."""

    __slots__ = ("p", "_inverses")

    def __init__(self, p: int):
        if not is_prime(p):
            raise ValueError(f"characteristic must be prime, got {p}")
        self.p = p
        self._inverses: dict[int, int] = {}

    @property
    def characteristic(self) -> int:
        return self.p

    zero = 0
    one = 1

    def coerce(self, a) -> int:
        if isinstance(a, int):
            return a % self.p
        if isinstance(a, Fraction):
            if a.denominator % self.p == 0:
                raise ZeroDivisionError(f"denominator divisible by {self.p}")
            return a.numerator * self.inv(a.denominator % self.p) % self.p
        raise TypeError(f"cannot coerce {a!r} into F{self.p}")

    def add(self, a, b):
        return (a + b) % self.p

    def sub(self, a, b):
        return (a - b) % self.p

    def mul(self, a, b):
        return a * b % self.p

    def neg(self, a):
        return -a % self.p

    def inv(self, a):
        a %= self.p
        if a == 0:
            raise ZeroDivisionError(f"inverse of 0 in F{self.p}")
        cached = self._inverses.get(a)
        if cached is None:
            cached = pow(a, self.p - 2, self.p)
            self._inverses[a] = cached  # idempotent write, thread-safe under GIL
        return cached

    def __eq__(self, other):
        return isinstance(other, PrimeField) and other.p == self.p

    def __hash__(self):
        return hash(("F", self.p))

    def __repr__(self):
        return f"F{self.p}"


class RationalField:
    """The rationals, exact via fractions.Fraction."""

    __slots__ = ()

    characteristic = 0
    zero = Fraction(0)
    one = Fraction(1)

    def coerce(self, a) -> Fraction:
        if isinstance(a, (int, Fraction)):
            return Fraction(a)
        raise TypeError(f"cannot coerce {a!r} into QQ")

    def add(self, a, b):
        return a + b

    def sub(self, a, b):
        return a - b

    def mul(self, a, b):
        return a * b

    def neg(self, a):
        return -a

    def inv(self, a):
        if a == 0:
            raise ZeroDivisionError("inverse of 0 in QQ")
        return 1 / Fraction(a)

    def __eq__(self, other):
        return isinstance(other, RationalField)

    def __hash__(self):
        return hash("QQ")

    def __repr__(self):
        return "QQ"


QQ = RationalField()


def field_of_characteristic(p: int):
    """F_p for prime p, the rationals for p = 0."""
    if p == 0:
        return QQ
    return PrimeField(p)
