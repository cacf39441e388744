"""Buchberger's algorithm and normal forms.

Normal selection strategy (smallest lcm under the active order) plus the
two standard pair-elimination criteria: the coprime leading-term criterion
and the chain criterion. Output bases are reduced: leading coefficients 1,
no leading term divides another, every generator fully reduced against the
rest. Reduced bases are deterministic for a fixed input and order.

The inner loops work on raw term dicts (exponent tuple -> coefficient) for
speed; Polynomial objects appear only at the boundaries.
"""

from __future__ import annotations

import heapq

from .fields import PrimeField
from .orders import DEGREVLEX, MonomialOrder
from .poly import Polynomial, PolyRing


def _divides(a, b) -> bool:
    for x, y in zip(a, b):
        if x > y:
            return False
    return True


def _reduce_terms(terms, lts, tails, nkeyf, field):
    """Full normal form of a term dict against monic reducers.

    Uses a lazy heap on the reversed order key, so each monomial's key is
    computed once; new terms from a reduction step are strictly below the
    current lead, so pops come in strictly decreasing monomial order.
    """
    if isinstance(field, PrimeField):
        return _reduce_terms_fp(terms, lts, tails, nkeyf, field.p)
    work = dict(terms)
    heap = [(nkeyf(e), e) for e in work]
    heapq.heapify(heap)
    out = {}
    zero = field.zero
    nred = len(lts)
    while heap:
        _, lead = heapq.heappop(heap)
        c = work.pop(lead, None)
        if c is None:
            continue
        for i in range(nred):
            lt = lts[i]
            if _divides(lt, lead):
                shift = tuple(b - a for a, b in zip(lt, lead))
                for e, tc in tails[i]:
                    k = tuple(x + y for x, y in zip(e, shift))
                    cur = work.get(k)
                    if cur is None:
                        acc = field.neg(field.mul(c, tc))
                        if acc != zero:
                            work[k] = acc
                            heapq.heappush(heap, (nkeyf(k), k))
                    else:
                        acc = field.sub(cur, field.mul(c, tc))
                        if acc == zero:
                            del work[k]
                        else:
                            work[k] = acc
                break
        else:
            out[lead] = c
    return out


def _reduce_terms_fp(terms, lts, tails, nkeyf, p):
    work = dict(terms)
    heap = [(nkeyf(e), e) for e in work]
    heapq.heapify(heap)
    out = {}
    nred = len(lts)
    while heap:
        _, lead = heapq.heappop(heap)
        c = work.pop(lead, None)
        if c is None:
            continue
        for i in range(nred):
            lt = lts[i]
            ok = True
            for x, y in zip(lt, lead):
                if x > y:
                    ok = False
                    break
            if ok:
                shift = tuple(b - a for a, b in zip(lt, lead))
                for e, tc in tails[i]:
                    k = tuple(x + y for x, y in zip(e, shift))
                    cur = work.get(k)
                    if cur is None:
                        acc = (-c * tc) % p
                        if acc:
                            work[k] = acc
                            heapq.heappush(heap, (nkeyf(k), k))
                    else:
                        acc = (cur - c * tc) % p
                        if acc:
                            work[k] = acc
                        else:
                            del work[k]
                break
        else:
            out[lead] = c
    return out


def _monic_terms(terms, lt, field):
    lc = terms[lt]
    if lc == field.one:
        return terms
    inv = field.inv(lc)
    if isinstance(field, PrimeField):
        p = field.p
        return {e: c * inv % p for e, c in terms.items()}
    return {e: field.mul(c, inv) for e, c in terms.items()}


def _tail_items(terms, lt):
    return tuple((e, c) for e, c in terms.items() if e != lt)


def buchberger(gens, order: MonomialOrder, ring: PolyRing):
    """Groebner basis of the ideal generated by gens; list of monic term dicts."""
    keyf = order.key(ring.nvars)
    nkeyf = order.negkey(ring.nvars)
    field = ring.field

    basis_terms: list[dict] = []
    lts: list[tuple] = []
    tails: list[tuple] = []

    def push(terms):
        lt = max(terms, key=keyf)
        terms = _monic_terms(terms, lt, field)
        basis_terms.append(terms)
        lts.append(lt)
        tails.append(_tail_items(terms, lt))
        return len(lts) - 1

    # seed deterministically: smallest leading terms first, each reduced
    seeds = sorted((g.terms for g in gens if g.terms),
                   key=lambda t: keyf(max(t, key=keyf)))
    pairs: list = []
    treated: set = set()
    for terms in seeds:
        red = _reduce_terms(terms, lts, tails, nkeyf, field)
        if not red:
            continue
        j = push(red)
        for i in range(j):
            lcm = tuple(max(a, b) for a, b in zip(lts[i], lts[j]))
            heapq.heappush(pairs, (keyf(lcm), i, j, lcm))

    while pairs:
        _, i, j, lcm = heapq.heappop(pairs)
        treated.add((i, j))
        lti, ltj = lts[i], lts[j]
        # coprime criterion
        if all(min(a, b) == 0 for a, b in zip(lti, ltj)):
            continue
        # chain criterion
        skip = False
        for k in range(len(lts)):
            if k == i or k == j:
                continue
            if _divides(lts[k], lcm):
                p1 = (min(i, k), max(i, k))
                p2 = (min(j, k), max(j, k))
                if p1 in treated and p2 in treated:
                    skip = True
                    break
        if skip:
            continue
        # S-polynomials of two monomials vanish identically
        if len(basis_terms[i]) == 1 and len(basis_terms[j]) == 1:
            continue
        s = _spoly(basis_terms[i], lti, basis_terms[j], ltj, lcm, field)
        red = _reduce_terms(s, lts, tails, nkeyf, field)
        if not red:
            continue
        nj = push(red)
        for ii in range(nj):
            nlcm = tuple(max(a, b) for a, b in zip(lts[ii], lts[nj]))
            heapq.heappush(pairs, (keyf(nlcm), ii, nj, nlcm))

    return _interreduce(basis_terms, lts, keyf, nkeyf, field)


def _spoly(t1, lt1, t2, lt2, lcm, field):
    """S-polynomial of two monic term dicts."""
    s1 = tuple(a - b for a, b in zip(lcm, lt1))
    s2 = tuple(a - b for a, b in zip(lcm, lt2))
    if isinstance(field, PrimeField):
        p = field.p
        res = {}
        for e, c in t1.items():
            k = tuple(x + y for x, y in zip(e, s1))
            res[k] = c
        for e, c in t2.items():
            k = tuple(x + y for x, y in zip(e, s2))
            acc = (res.get(k, 0) - c) % p
            if acc:
                res[k] = acc
            else:
                res.pop(k, None)
        return res
    zero = field.zero
    res = {}
    for e, c in t1.items():
        res[tuple(x + y for x, y in zip(e, s1))] = c
    for e, c in t2.items():
        k = tuple(x + y for x, y in zip(e, s2))
        acc = field.sub(res.get(k, zero), c)
        if acc == zero:
            res.pop(k, None)
        else:
            res[k] = acc
    return res


def _interreduce(basis_terms, lts, keyf, nkeyf, field):
    """Minimalize by leading terms, then fully reduce each survivor."""
    order_idx = sorted(range(len(lts)), key=lambda i: keyf(lts[i]))
    kept: list[int] = []
    for i in order_idx:
        if not any(_divides(lts[k], lts[i]) for k in kept):
            kept.append(i)
    final = []
    for pos, i in enumerate(kept):
        others = [kept[q] for q in range(len(kept)) if q != pos]
        red = _reduce_terms(basis_terms[i],
                            [lts[k] for k in others],
                            [_tail_items(basis_terms[k], lts[k]) for k in others],
                            nkeyf, field)
        # reduction preserves the leading term of a minimal generator
        lt = max(red, key=keyf)
        final.append((lt, _monic_terms(red, lt, field)))
    final.sort(key=lambda t: keyf(t[0]), reverse=True)
    return final


class GroebnerBasis:
    """A reduced Groebner basis with precomputed reduction data."""

    __slots__ = ("ring", "order", "polys", "reduced", "_lts", "_tails", "_nkeyf")

    def __init__(self, ring: PolyRing, order: MonomialOrder, pairs):
        self.ring = ring
        self.order = order
        self.reduced = True
        self._nkeyf = order.negkey(ring.nvars)
        self._lts = tuple(lt for lt, _ in pairs)
        self._tails = tuple(_tail_items(t, lt) for lt, t in pairs)
        self.polys = tuple(Polynomial(ring, t) for _, t in pairs)

    def __len__(self):
        return len(self.polys)

    def __iter__(self):
        return iter(self.polys)

    def leading_exponents(self) -> tuple[tuple, ...]:
        return self._lts

    def is_unit_ideal(self) -> bool:
        return any(all(e == 0 for e in lt) for lt in self._lts)

    def reduce(self, f: Polynomial) -> Polynomial:
        if f.ring != self.ring:
            raise RingMismatchError(f"{f.ring} vs {self.ring}")
        red = _reduce_terms(f.terms, self._lts, self._tails, self._nkeyf,
                            self.ring.field)
        return Polynomial(self.ring, red)

    def contains(self, f: Polynomial) -> bool:
        return not self.reduce(f).terms

    def __repr__(self):
        return f"GroebnerBasis({list(map(str, self.polys))})"


def groebner_basis(gens, order: MonomialOrder = DEGREVLEX,
                   ring: PolyRing | None = None) -> GroebnerBasis:
    """Reduced Groebner basis of the ideal generated by gens."""
    gens = list(gens)
    if ring is None:
        if not gens:
            raise ValueError("cannot infer the ring of an empty generator list")
        ring = gens[0].ring
    for g in gens:
        if g.ring != ring:
            raise RingMismatchError(f"{g.ring} vs {ring}")
    pairs = buchberger(gens, order, ring)
    return GroebnerBasis(ring, order, pairs)


def normal_form(f: Polynomial, gb: GroebnerBasis) -> Polynomial:
    """Unique remainder of f modulo the basis: zero iff f is in the ideal."""
    return gb.reduce(f)
