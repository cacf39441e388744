"""The ideal calculus over the ambient polynomial ring.

Ideals carry a lazily populated per-order Groebner cache (idempotent
writes, so concurrent readers are safe). Ideal equality is always tested
by mutual membership against reduced bases, never by comparing basis
lists. Intersections use the single auxiliary-variable construction
t*U + (1-t)*V, and quotients reduce to intersections.
"""

from __future__ import annotations

import math

from .errors import CapExceededError, EngineError, RingMismatchError
from .groebner import GroebnerBasis, groebner_basis, normal_form
from .orders import DEGREVLEX, MonomialOrder, elimination_order
from .poly import Polynomial, PolyRing
from . import staircase

INFINITE = math.inf

_AUX = "_t0"  # auxiliary variable for intersections; not a legal DSL name


class Ideal:
    """Finitely generated ideal of a PolyRing, with cached bases."""

    __slots__ = ("ring", "gens", "_gb", "_key")

    def __init__(self, ring: PolyRing, gens):
        self.ring = ring
        cleaned = []
        for g in gens:
            if isinstance(g, str):
                g = ring.poly(g)
            if g.ring != ring:
                raise RingMismatchError(f"{g.ring} vs {ring}")
            if g.terms:
                cleaned.append(g)
        cleaned.sort(key=lambda p: p.canonical_key())
        self.gens = tuple(cleaned)
        self._gb: dict = {}
        self._key = None

    def key(self):
        """Canonical hashable key of the generator list (cache identity)."""
        if self._key is None:
            self._key = tuple(g.canonical_key() for g in self.gens)
        return self._key

    def groebner(self, order: MonomialOrder = DEGREVLEX) -> GroebnerBasis:
        ck = order.cache_key()
        gb = self._gb.get(ck)
        if gb is None:
            gb = groebner_basis(self.gens, order, self.ring)
            self._gb[ck] = gb  # idempotent write
        return gb

    def contains(self, f: Polynomial) -> bool:
        if not f.terms:
            return True
        return self.groebner().contains(f)

    def contains_ideal(self, other: "Ideal") -> bool:
        return all(self.contains(g) for g in other.gens)

    def equals(self, other: "Ideal") -> bool:
        return self.contains_ideal(other) and other.contains_ideal(self)

    def is_zero(self) -> bool:
        return not self.gens

    def __repr__(self):
        return f"Ideal({', '.join(map(str, self.gens))})"


def groebner(U: Ideal, order: MonomialOrder = DEGREVLEX) -> GroebnerBasis:
    return U.groebner(order)


def ideal_sum(U: Ideal, V: Ideal) -> Ideal:
    _same_ring(U, V)
    return Ideal(U.ring, U.gens + V.gens)


def ideal_product(U: Ideal, V: Ideal) -> Ideal:
    _same_ring(U, V)
    return Ideal(U.ring, [g * h for g in U.gens for h in V.gens])


def ideal_power(U: Ideal, n: int) -> Ideal:
    if n < 0:
        raise ValueError("ideal power needs n >= 0")
    if n == 0:
        return Ideal(U.ring, [U.ring.one()])
    result = U
    for _ in range(n - 1):
        result = ideal_product(result, U)
    return result


def _same_ring(U: Ideal, V: Ideal):
    if U.ring != V.ring:
        raise RingMismatchError(f"{U.ring} vs {V.ring}")


def _extend_ring(ring: PolyRing) -> PolyRing:
    return PolyRing(ring.field, (_AUX,) + ring.variables)


def _lift(f: Polynomial, ext: PolyRing) -> Polynomial:
    return Polynomial(ext, {(0,) + e: c for e, c in f.terms.items()})


def _restrict(f: Polynomial, ring: PolyRing) -> Polynomial:
    return Polynomial(ring, {e[1:]: c for e, c in f.terms.items()})


def intersect(U: Ideal, V: Ideal) -> Ideal:
    """U ∩ V via t*U + (1-t)*V and elimination of t."""
    _same_ring(U, V)
    if U.is_zero() or V.is_zero():
        return Ideal(U.ring, [])
    ext = _extend_ring(U.ring)
    t = ext.var(_AUX)
    one_minus_t = ext.one() - t
    gens = [t * _lift(g, ext) for g in U.gens]
    gens += [one_minus_t * _lift(h, ext) for h in V.gens]
    gb = groebner_basis(gens, elimination_order((0,)), ext)
    kept = [_restrict(g, U.ring) for g in gb
            if all(e[0] == 0 for e in g.terms)]
    return Ideal(U.ring, kept)


def _exact_divide(h: Polynomial, f: Polynomial) -> Polynomial:
    """h / f for h in the principal ideal (f)."""
    ring = h.ring
    field = ring.field
    keyf = DEGREVLEX.key(ring.nvars)
    flt, flc = f.leading()
    flc_inv = field.inv(flc)
    quotient = {}
    rem = h
    while rem.terms:
        lt, lc = rem.leading()
        shift = tuple(a - b for a, b in zip(lt, flt))
        if any(s < 0 for s in shift):
            raise EngineError("exact division failed (not a multiple)")
        q = field.mul(lc, flc_inv)
        quotient[shift] = q
        rem = rem - Polynomial(ring, {shift: q}) * f
        if rem.terms and keyf(rem.leading()[0]) >= keyf(lt):
            raise EngineError("exact division did not decrease the leading term")
    return Polynomial(ring, quotient)


def ideal_quotient(U: Ideal, f: Polynomial) -> Ideal:
    """U : f = {g : g*f in U}, via intersection with (f)."""
    if isinstance(f, str):
        f = U.ring.poly(f)
    if not f.terms:
        raise ValueError("quotient by the zero polynomial")
    if U.is_zero():
        return Ideal(U.ring, [])
    inter = intersect(U, Ideal(U.ring, [f]))
    return Ideal(U.ring, [_exact_divide(g, f) for g in inter.gens])


def ideal_quotient_by_ideal(U: Ideal, V: Ideal) -> Ideal:
    """U : V as the intersection of the quotients by the generators of V."""
    _same_ring(U, V)
    if V.is_zero():
        raise ValueError("quotient by the zero ideal")
    result = None
    for g in V.gens:
        q = ideal_quotient(U, g)
        result = q if result is None else intersect(result, q)
    return result


def saturate(U: Ideal, V: Ideal, cap: int = 64):
    """(U : V^inf, e) with e the least exponent where the chain stabilizes."""
    _same_ring(U, V)
    if V.is_zero():
        raise ValueError("saturation by the zero ideal")
    current = U
    for e in range(cap + 1):
        nxt = ideal_quotient_by_ideal(current, V)
        # the chain only grows, so one inclusion decides equality
        if current.contains_ideal(nxt):
            return current, e
        current = nxt
    raise CapExceededError("cap_saturate", cap, "colon chain did not stabilize")


def eliminate(U: Ideal, drop: set) -> Ideal:
    """U ∩ k[remaining variables], via a block order with drop in front.

    drop may hold variable names or indices; the result lives in the same
    ambient ring, its generators free of the dropped variables.
    """
    ring = U.ring
    idx = set()
    for d in drop:
        idx.add(ring.index[d] if isinstance(d, str) else int(d))
    if not idx:
        return U
    if not idx.issubset(range(ring.nvars)):
        raise ValueError(f"drop variables {drop} outside the ring")
    gb = U.groebner(elimination_order(tuple(sorted(idx))))
    kept = [g for g in gb if all(all(e[i] == 0 for i in idx) for e in g.terms)]
    return Ideal(ring, kept)


def leading_term_generators(U: Ideal, order: MonomialOrder = DEGREVLEX):
    """Minimal generators of the leading-term ideal."""
    gb = U.groebner(order)
    return staircase.minimalize(gb.leading_exponents())


def kdim_quotient(U: Ideal, order: MonomialOrder = DEGREVLEX):
    """dim_k of k[x]/U: the number of standard monomials, or INFINITE."""
    lts = leading_term_generators(U, order)
    nvars = U.ring.nvars
    if staircase._is_unit(lts):
        return 0
    if not staircase.has_all_pure_powers(lts, nvars):
        return INFINITE
    return staircase.count_standard(lts, nvars)


def affine_hilbert(U: Ideal, t: int, order: MonomialOrder = DEGREVLEX) -> int:
    """dim_k of (k[x]/U) truncated at total degree <= t."""
    if not order.degree_compatible:
        raise EngineError("affine Hilbert function needs a degree-compatible order")
    lts = leading_term_generators(U, order)
    return staircase.count_standard_bounded(lts, U.ring.nvars, t)


def contained_in_max_ideal(U: Ideal) -> bool:
    """True iff U is inside (x_1..x_s), i.e. every element vanishes at 0.

    Zero constant terms are preserved by ideal combinations, so checking
    the generators is equivalent to checking a Groebner basis.
    """
    zero = U.ring.field.zero
    return all(g.constant_term() == zero for g in U.gens)
