"""Staircase combinatorics on monomial ideals.

Everything here works on exponent tuples (the minimal generators of a
leading-term ideal). Standard monomials are the monomials outside the
ideal; their count is the k-dimension of the quotient. The gap count
between two nested monomial ideals realizes finite subquotient lengths
exactly, with no limit detection.
"""

from __future__ import annotations

from math import comb

from .errors import EngineError


class InfiniteGapError(EngineError):
    """The requested monomial count is not finite."""


def minimalize(gens):
    """Minimal generators: drop every monomial divisible by another."""
    out: list[tuple] = []
    for m in sorted(set(gens), key=lambda t: (sum(t), t)):
        if not any(all(g[i] <= m[i] for i in range(len(m))) for g in out):
            out.append(m)
    return out


def _slice(gens, e):
    """Generators with first exponent <= e, first coordinate dropped."""
    return minimalize([g[1:] for g in gens if g[0] <= e])


def _is_unit(gens) -> bool:
    return any(all(x == 0 for x in g) for g in gens)


def has_all_pure_powers(gens, nvars: int) -> bool:
    """Finiteness criterion: some pure power of every variable is present."""
    found = [False] * nvars
    for g in gens:
        support = [i for i, e in enumerate(g) if e > 0]
        if len(support) == 1:
            found[support[0]] = True
    return all(found)


def iter_standard(gens, nvars: int):
    """Yield all standard monomials; requires a zero-dimensional ideal."""
    gens = minimalize(gens)
    if _is_unit(gens):
        return
    if not has_all_pure_powers(gens, nvars):
        raise InfiniteGapError("standard monomial set is infinite")

    def rec(prefix, gens, nv):
        if _is_unit(gens):
            return
        if nv == 0:
            yield prefix
            return
        e = 0
        while True:
            sl = _slice(gens, e)
            if _is_unit(sl):
                return
            yield from rec(prefix + (e,), sl, nv - 1)
            e += 1

    yield from rec((), gens, nvars)


def count_standard(gens, nvars: int) -> int:
    return sum(1 for _ in iter_standard(gens, nvars))


def max_standard_degree(gens, nvars: int) -> int:
    """Largest total degree of a standard monomial; -1 if there is none."""
    best = -1
    for m in iter_standard(gens, nvars):
        d = sum(m)
        if d > best:
            best = d
    return best


def count_standard_bounded(gens, nvars: int, maxdeg: int) -> int:
    """Standard monomials of total degree <= maxdeg (always finite)."""
    gens = minimalize(gens)
    memo: dict = {}

    def rec(gens, nv, budget):
        if budget < 0:
            return 0
        if _is_unit(gens):
            return 0
        if not gens:
            return comb(budget + nv, nv)
        if nv == 0:
            return 1
        key = (tuple(gens), nv, budget)
        hit = memo.get(key)
        if hit is not None:
            return hit
        total = 0
        e = 0
        while e <= budget:
            sl = _slice(gens, e)
            if _is_unit(sl):
                break
            total += rec(sl, nv - 1, budget - e)
            e += 1
        memo[key] = total
        return total

    return rec(gens, nvars, maxdeg)


def count_gap(inner, outer, nvars: int) -> int:
    """Count monomials inside ideal(outer) but outside ideal(inner).

    Requires ideal(inner) to be contained in ideal(outer); raises
    InfiniteGapError if the count is not finite.
    """
    memo: dict = {}

    def rec(inner, outer, nv):
        inner = minimalize(inner)
        outer = minimalize(outer)
        if not outer or _is_unit(inner):
            return 0
        if sorted(inner) == sorted(outer):
            return 0
        if nv == 0:
            # outer contains 1, inner does not
            return 1
        key = (tuple(inner), tuple(outer), nv)
        hit = memo.get(key)
        if hit is not None:
            return hit
        top = max(g[0] for g in inner + outer)
        total = 0
        breaks = sorted({g[0] for g in inner + outer} | {0})
        for idx, start in enumerate(breaks):
            if start > top - 1:
                break
            end = breaks[idx + 1] if idx + 1 < len(breaks) else top
            end = min(end, top)
            if end <= start:
                continue
            total += (end - start) * rec(_slice(inner, start),
                                         _slice(outer, start), nv - 1)
        tail = rec(_slice(inner, top), _slice(outer, top), nv - 1)
        if tail:
            raise InfiniteGapError("subquotient has infinite length")
        memo[key] = total
        return total

    return rec(list(inner), list(outer), nvars)
