"""Multivariate polynomials over an exact field, sparse in terms.

A PolyRing fixes the field and the variable names; a Polynomial is an
immutable map from exponent tuples to nonzero coefficients. Canonical form
is unique: no zero coefficients are stored, and printing sorts terms by
descending degrevlex. All values are safe to share between threads.

Text syntax (also consumed by the job DSL): integers, variables, `+ - * ^`
and parentheses, e.g. ``x^2 - 3*x*y``.
"""

from __future__ import annotations

from fractions import Fraction

from .errors import RingMismatchError
from .fields import PrimeField, field_of_characteristic
from .orders import DEGREVLEX, MonomialOrder


class PolyRing:
    """k[x_1..x_s] for an exact field k and named variables."""

    __slots__ = ("field", "variables", "index")

    def __init__(self, field, variables):
        variables = tuple(variables)
        if len(set(variables)) != len(variables):
            raise ValueError(f"duplicate variable names in {variables}")
        if not variables:
            raise ValueError("need at least one variable")
        for v in variables:
            if not v.isidentifier():
                raise ValueError(f"invalid variable name {v!r}")
        self.field = field
        self.variables = variables
        self.index = {v: i for i, v in enumerate(variables)}

    @property
    def nvars(self) -> int:
        return len(self.variables)

    def zero(self) -> "Polynomial":
        return Polynomial(self, {})

    def one(self) -> "Polynomial":
        return self.const(1)

    def const(self, c) -> "Polynomial":
        c = self.field.coerce(c)
        if c == self.field.zero:
            return self.zero()
        return Polynomial(self, {(0,) * self.nvars: c})

    def var(self, name: str) -> "Polynomial":
        i = self.index.get(name)
        if i is None:
            raise KeyError(f"unknown variable {name!r} in {self!r}")
        exps = [0] * self.nvars
        exps[i] = 1
        return Polynomial(self, {tuple(exps): self.field.one})

    def gens(self) -> tuple["Polynomial", ...]:
        return tuple(self.var(v) for v in self.variables)

    def monomial(self, exps, c=1) -> "Polynomial":
        exps = tuple(exps)
        if len(exps) != self.nvars or any(e < 0 for e in exps):
            raise ValueError(f"bad exponent vector {exps}")
        c = self.field.coerce(c)
        if c == self.field.zero:
            return self.zero()
        return Polynomial(self, {exps: c})

    def from_terms(self, items) -> "Polynomial":
        terms = {}
        zero = self.field.zero
        for exps, c in items:
            exps = tuple(exps)
            c = self.field.coerce(c)
            acc = self.field.add(terms.get(exps, zero), c)
            if acc == zero:
                terms.pop(exps, None)
            else:
                terms[exps] = acc
        return Polynomial(self, terms)

    def poly(self, src) -> "Polynomial":
        """Coerce a string, number, dict or Polynomial into this ring."""
        if isinstance(src, Polynomial):
            if src.ring != self:
                raise RingMismatchError(f"{src} lives in {src.ring}, not {self}")
            return src
        if isinstance(src, str):
            return parse_polynomial(self, src)
        if isinstance(src, (int, Fraction)):
            return self.const(src)
        if isinstance(src, dict):
            return self.from_terms(src.items())
        raise TypeError(f"cannot build a polynomial from {src!r}")

    def __eq__(self, other):
        return (isinstance(other, PolyRing) and other.field == self.field
                and other.variables == self.variables)

    def __hash__(self):
        return hash((self.field, self.variables))

    def __repr__(self):
        return f"{self.field}[{','.join(self.variables)}]"


def ring_of(characteristic: int, variables) -> PolyRing:
    return PolyRing(field_of_characteristic(characteristic), variables)


class Polynomial:
    """Immutable sparse polynomial; terms maps exponent tuple -> coefficient."""

    __slots__ = ("ring", "terms")

    def __init__(self, ring: PolyRing, terms: dict):
        self.ring = ring
        self.terms = terms  # owned; never mutated after construction

    # -- structure ---------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self) -> bool:
        return bool(self.terms)

    def total_degree(self) -> int:
        """Max term degree; -1 for the zero polynomial."""
        if not self.terms:
            return -1
        return max(sum(e) for e in self.terms)

    def is_homogeneous(self) -> bool:
        if not self.terms:
            return True
        degs = {sum(e) for e in self.terms}
        return len(degs) == 1

    def constant_term(self):
        """Coefficient of the all-zero monomial (zero if absent)."""
        return self.terms.get((0,) * self.ring.nvars, self.ring.field.zero)

    def leading(self, order: MonomialOrder = DEGREVLEX):
        """(exponents, coefficient) of the leading term under the order."""
        if not self.terms:
            raise ValueError("zero polynomial has no leading term")
        lead = max(self.terms, key=order.key(self.ring.nvars))
        return lead, self.terms[lead]

    def sorted_terms(self, order: MonomialOrder = DEGREVLEX):
        keyf = order.key(self.ring.nvars)
        return sorted(self.terms.items(), key=lambda t: keyf(t[0]), reverse=True)

    def monic(self, order: MonomialOrder = DEGREVLEX) -> "Polynomial":
        if not self.terms:
            return self
        _, lc = self.leading(order)
        if lc == self.ring.field.one:
            return self
        inv = self.ring.field.inv(lc)
        mul = self.ring.field.mul
        return Polynomial(self.ring, {e: mul(c, inv) for e, c in self.terms.items()})

    # -- arithmetic --------------------------------------------------------

    def _coerce_other(self, other):
        if isinstance(other, Polynomial):
            if other.ring != self.ring:
                raise RingMismatchError(
                    f"mismatched ambient rings: {self.ring} vs {other.ring}")
            return other
        if isinstance(other, (int, Fraction)):
            return self.ring.const(other)
        return None

    def __add__(self, other):
        other = self._coerce_other(other)
        if other is None:
            return NotImplemented
        field = self.ring.field
        zero = field.zero
        res = dict(self.terms)
        for e, c in other.terms.items():
            acc = field.add(res.get(e, zero), c)
            if acc == zero:
                res.pop(e, None)
            else:
                res[e] = acc
        return Polynomial(self.ring, res)

    __radd__ = __add__

    def __neg__(self):
        neg = self.ring.field.neg
        return Polynomial(self.ring, {e: neg(c) for e, c in self.terms.items()})

    def __sub__(self, other):
        other = self._coerce_other(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce_other(other)
        if other is None:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other):
        other = self._coerce_other(other)
        if other is None:
            return NotImplemented
        field = self.ring.field
        if isinstance(field, PrimeField):
            # accumulate raw ints, reduce once
            p = field.p
            acc: dict = {}
            for e1, c1 in self.terms.items():
                for e2, c2 in other.terms.items():
                    k = tuple(a + b for a, b in zip(e1, e2))
                    acc[k] = acc.get(k, 0) + c1 * c2
            return Polynomial(self.ring,
                              {k: v % p for k, v in acc.items() if v % p})
        zero = field.zero
        res: dict = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                k = tuple(a + b for a, b in zip(e1, e2))
                acc = field.add(res.get(k, zero), field.mul(c1, c2))
                if acc == zero:
                    res.pop(k, None)
                else:
                    res[k] = acc
        return Polynomial(self.ring, res)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative polynomial power")
        result = self.ring.one()
        base = self
        while n:
            if n & 1:
                result = result * base
            base2 = base * base if n > 1 else base
            base, n = base2, n >> 1
        return result

    # -- identity ----------------------------------------------------------

    def canonical_key(self):
        """Hashable canonical form: sorted (exps, coeff) pairs."""
        return tuple(sorted(self.terms.items()))

    def __eq__(self, other):
        if not isinstance(other, Polynomial):
            other = self._coerce_other(other)
            if other is None:
                return NotImplemented
        return self.ring == other.ring and self.terms == other.terms

    def __hash__(self):
        return hash((self.ring, frozenset(self.terms.items())))

    # -- printing ----------------------------------------------------------

    def _monomial_str(self, exps) -> str:
        parts = []
        for v, e in zip(self.ring.variables, exps):
            if e == 1:
                parts.append(v)
            elif e > 1:
                parts.append(f"{v}^{e}")
        return "*".join(parts)

    def __str__(self):
        if not self.terms:
            return "0"
        pieces = []
        for exps, c in self.sorted_terms():
            mono = self._monomial_str(exps)
            if not mono:
                pieces.append(str(c))
            elif c == self.ring.field.one:
                pieces.append(mono)
            else:
                pieces.append(f"{c}*{mono}")
        return " + ".join(pieces)

    def __repr__(self):
        return f"<{self} over {self.ring}>"


def parse_polynomial(ring: PolyRing, text: str) -> Polynomial:
    """Parse the polynomial text syntax into the given ring."""
    from .dsl import parse_polynomial_text  # single grammar implementation
    return parse_polynomial_text(ring, text)
