"""The local ring A = (k[x_1..x_s]/I) localized at m = (x_1..x_s).

Every invariant of A is reduced to ambient ideal calculus. Local lengths
are computed exactly: for homogeneous data the localization at the origin
changes nothing (every component of a homogeneous ideal passes through the
origin), so the ambient standard-monomial count is the length; otherwise
the ideal is truncated by a power of m and the truncation is certified by
the Nakayama containment m^(N-1) subset T + m^N, checked by membership of
the monomial generators. A certified truncation is a proof, not a
heuristic, and every cap hit is a hard error.

Caches on a LocalRing use idempotent writes only; distinct rings are fully
independent.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations_with_replacement

from .config import DEFAULT_CONFIG, EngineConfig
from .errors import (CapExceededError, EngineError,
                     InvalidParameterSystemError)
from .fields import is_prime
from .ideals import (Ideal, INFINITE, contained_in_max_ideal, ideal_power,
                     ideal_quotient, ideal_sum, intersect,
                     leading_term_generators, saturate)
from .poly import Polynomial, PolyRing, ring_of
from . import staircase


@dataclass(frozen=True)
class RingPresentation:
    """characteristic, variables and the defining ideal I of A = k[x]/I."""

    characteristic: int
    variables: tuple[str, ...]
    defining: tuple[Polynomial, ...]

    @staticmethod
    def make(characteristic: int, variables, gens) -> "RingPresentation":
        if characteristic != 0 and not is_prime(characteristic):
            raise EngineError(
                f"characteristic must be prime or 0, got {characteristic}")
        ring = ring_of(characteristic, variables)
        polys = tuple(ring.poly(g) for g in gens)
        return RingPresentation(characteristic, tuple(variables), polys)

    def ring(self) -> PolyRing:
        if self.defining:
            return self.defining[0].ring
        return ring_of(self.characteristic, self.variables)

    def validate(self):
        if self.characteristic != 0 and not is_prime(self.characteristic):
            raise EngineError(
                f"characteristic must be prime or 0, got {self.characteristic}")
        ring = self.ring()
        zero = ring.field.zero
        for g in self.defining:
            if g.constant_term() != zero:
                raise EngineError(
                    f"defining generator {g} has nonzero constant term, "
                    "so the ideal is not inside the maximal ideal")

    def __str__(self):
        gens = ", ".join(str(g) for g in self.defining)
        head = "Q" if self.characteristic == 0 else f"F{self.characteristic}"
        return f"{head}[{','.join(self.variables)}]/({gens})"


@dataclass(frozen=True)
class ParameterSystem:
    """A validated (sub)system of parameters of a LocalRing."""

    elements: tuple[Polynomial, ...]
    full: bool

    def __len__(self):
        return len(self.elements)

    def __str__(self):
        return "(" + ", ".join(str(e) for e in self.elements) + ")"

    def key(self):
        return tuple(e.canonical_key() for e in self.elements)


class LocalRing:
    """A presented local ring with its dimension and computation caches."""

    def __init__(self, presentation: RingPresentation, dimension: int,
                 config: EngineConfig):
        self.presentation = presentation
        self.ring = presentation.ring()
        self.defining = Ideal(self.ring, presentation.defining)
        self.dim = dimension
        self.config = config
        self._mpow: dict[int, Ideal] = {}
        self._colength: dict = {}
        self._powers: dict = {}
        self._saturations: dict = {}
        self._fsl: dict = {}
        self._quotients: dict = {}
        self._interned: dict = {}
        self._intersections: dict = {}
        self._ideal_quotients: dict = {}

    # -- basic ideals ------------------------------------------------------

    def ideal(self, gens) -> Ideal:
        return Ideal(self.ring, [self.ring.poly(g) for g in gens])

    def intern(self, U: Ideal) -> Ideal:
        """Canonical instance per generator list, so Groebner caches are
        shared across call sites (idempotent write)."""
        key = U.key()
        hit = self._interned.get(key)
        if hit is None:
            self._interned[key] = U
            return U
        return hit

    def sum_interned(self, U: Ideal, V: Ideal) -> Ideal:
        return self.intern(ideal_sum(U, V))

    def intersect_cached(self, U: Ideal, V: Ideal) -> Ideal:
        key = (U.key(), V.key())
        hit = self._intersections.get(key)
        if hit is None:
            hit = self.intern(intersect(U, V))
            self._intersections[key] = hit
        return hit

    def quotient_by_ideal_cached(self, U: Ideal, V: Ideal) -> Ideal:
        from .ideals import ideal_quotient_by_ideal
        key = (U.key(), V.key())
        hit = self._ideal_quotients.get(key)
        if hit is None:
            hit = self.intern(ideal_quotient_by_ideal(U, V))
            self._ideal_quotients[key] = hit
        return hit

    def maximal_ideal(self) -> Ideal:
        return self.mpow(1)

    def mpow(self, n: int) -> Ideal:
        """The ideal m^n, generated by all monomials of degree n."""
        if n <= 0:
            return self.intern(Ideal(self.ring, [self.ring.one()]))
        cached = self._mpow.get(n)
        if cached is None:
            nv = self.ring.nvars
            gens = []
            for combo in combinations_with_replacement(range(nv), n):
                exps = [0] * nv
                for i in combo:
                    exps[i] += 1
                gens.append(self.ring.monomial(exps))
            cached = self.intern(Ideal(self.ring, gens))
            self._mpow[n] = cached
        return cached

    def power_ideal(self, elements, n: int) -> Ideal:
        """(elements)^n as an ambient ideal, cached per (elements, n)."""
        elements = tuple(elements)
        key = (tuple(e.canonical_key() for e in elements), n)
        cached = self._powers.get(key)
        if cached is None:
            base = Ideal(self.ring, elements)
            cached = self.intern(ideal_power(base, n))
            self._powers[key] = cached
        return cached

    def quotient_cached(self, U: Ideal, f: Polynomial) -> Ideal:
        key = (U.key(), f.canonical_key())
        cached = self._quotients.get(key)
        if cached is None:
            cached = self.intern(ideal_quotient(U, f))
            self._quotients[key] = cached
        return cached

    def saturation_at_m(self, U: Ideal):
        """(U : m^inf, exponent), cached."""
        key = U.key()
        cached = self._saturations.get(key)
        if cached is None:
            sat, e = saturate(U, self.mpow(1), self.config.cap_saturate)
            cached = (self.intern(sat), e)
            self._saturations[key] = cached
        return cached

    def quotient_presentation(self, extra) -> RingPresentation:
        """Presentation of A/(extra) in the same ambient variables."""
        gens = self.presentation.defining + tuple(
            self.ring.poly(g) for g in extra)
        return RingPresentation(self.presentation.characteristic,
                                self.presentation.variables, gens)

    def __repr__(self):
        return f"LocalRing({self.presentation}, dim {self.dim})"


# -- dimension -------------------------------------------------------------


def _difference_table(values):
    rows = [list(values)]
    while len(rows[-1]) > 1:
        prev = rows[-1]
        rows.append([prev[i + 1] - prev[i] for i in range(len(prev) - 1)])
    return rows


def _stable_degree(values, window: int):
    """Degree of the eventual polynomial, or None if not yet certified.

    The least k whose k-th difference row ends in (window+1) equal values
    is the degree; rows below are eventually zero.
    """
    rows = _difference_table(values)
    for k, row in enumerate(rows):
        if len(row) >= window + 1:
            tail = row[-(window + 1):]
            if all(v == tail[0] for v in tail):
                return k
    return None


def _staircase_dimension(lts, nvars: int) -> int:
    """Krull dimension of k[x]/M for a monomial ideal M: the largest set of
    variables meeting the support of no generator."""
    if staircase._is_unit(lts):
        return 0
    supports = [frozenset(i for i, e in enumerate(g) if e > 0) for g in lts]
    from itertools import combinations
    for size in range(nvars, -1, -1):
        for combo in combinations(range(nvars), size):
            s = set(combo)
            if not any(sup <= s for sup in supports):
                return size
    return 0


def local_dimension(presentation: RingPresentation,
                    config: EngineConfig = DEFAULT_CONFIG) -> int:
    """dim of the localization at m, the degree of n -> dim_k k[x]/(I + m^n).

    Homogeneous presentations need no fitting: the local dimension equals
    the global one, which is the combinatorial dimension of the
    leading-term staircase. Otherwise the Hilbert-Samuel degree is
    extracted by iterated finite differences, sampling only past the top
    generator degree (below it the generators are invisible modulo m^n),
    with two guards against pre-polynomial plateaus: equal consecutive
    values certify dimension 0 outright (the m-adic chain stabilizes
    forever once it stalls), and a positive candidate degree is accepted
    only after it survives a horizon extension of window + 2 samples.
    """
    ring = presentation.ring()
    defining = Ideal(ring, presentation.defining)
    if all(g.is_homogeneous() for g in defining.gens):
        lts = leading_term_generators(defining)
        return _staircase_dimension(lts, ring.nvars)

    start = 1 + max((g.total_degree() for g in defining.gens), default=0)
    values = []
    n = start
    window = config.window
    candidate = None
    candidate_at = 0
    while n <= start + config.cap_dimension:
        mpow = _monomials_of_degree(ring, n)
        total = ideal_sum(defining, Ideal(ring, mpow))
        lts = leading_term_generators(total)
        values.append(staircase.count_standard(lts, ring.nvars))
        if len(values) >= 2 and values[-1] == values[-2]:
            return 0
        if len(values) >= window + 2:
            deg = _stable_degree(values, window)
            if deg is not None:
                if deg == candidate and n >= candidate_at + window + 2:
                    return deg
                if deg != candidate:
                    candidate = deg
                    candidate_at = n
        n += 1
    raise CapExceededError("cap_dimension", config.cap_dimension,
                           f"Hilbert-Samuel degree of {presentation} "
                           "did not stabilize")


def _monomials_of_degree(ring: PolyRing, n: int):
    gens = []
    for combo in combinations_with_replacement(range(ring.nvars), n):
        exps = [0] * ring.nvars
        for i in combo:
            exps[i] += 1
        gens.append(ring.monomial(exps))
    return gens


def make_local_ring(presentation: RingPresentation,
                    config: EngineConfig = DEFAULT_CONFIG) -> LocalRing:
    """Validate a presentation and compute the dimension."""
    presentation.validate()
    dim = local_dimension(presentation, config)
    return LocalRing(presentation, dim, config)


# -- local lengths ---------------------------------------------------------


def colength(A: LocalRing, J: Ideal):
    """Length of (A/JA) localized at m; INFINITE if not m-primary.

    Homogeneous data needs no truncation: all components pass through the
    origin, so the local length is the global standard-monomial count.
    Otherwise m-adic truncation with a certified Nakayama containment.
    """
    key = J.key()
    cached = A._colength.get(key)
    if cached is None:
        cached = _colength_impl(A, J)
        A._colength[key] = cached
    return cached


def _colength_impl(A: LocalRing, J: Ideal):
    T = A.sum_interned(A.defining, J)
    if all(g.is_homogeneous() for g in T.gens):
        lts = leading_term_generators(T)
        if staircase._is_unit(lts):
            return 0
        if not staircase.has_all_pure_powers(lts, A.ring.nvars):
            return INFINITE
        return staircase.count_standard(lts, A.ring.nvars)

    gb_unit = T.groebner()
    if gb_unit.is_unit_ideal():
        return 0

    N = 2
    while N <= A.config.cap_trunc:
        TN = A.sum_interned(T, A.mpow(N))
        gb = TN.groebner()
        lts = staircase.minimalize(gb.leading_exponents())
        standard = list(staircase.iter_standard(lts, A.ring.nvars))
        maxdeg = max((sum(e) for e in standard), default=-1)
        if maxdeg < N - 1 and _truncation_certified(A, gb, N):
            return len(standard)
        N *= 2
    # cap reached: decide INFINITE honestly via the dimension of A/(I+J)
    quotient = RingPresentation(A.presentation.characteristic,
                                A.presentation.variables, T.gens)
    if local_dimension(quotient, A.config) >= 1:
        return INFINITE
    raise CapExceededError("cap_trunc", A.config.cap_trunc,
                           "local length did not certify")


def _truncation_certified(A: LocalRing, gb, N: int) -> bool:
    """Nakayama certificate: every monomial of degree N-1 lies in T + m^N."""
    for mono in _monomials_of_degree(A.ring, N - 1):
        if gb.reduce(mono).terms:
            return False
    return True


def finite_subquotient_length(A: LocalRing, U: Ideal, V: Ideal) -> int:
    """Length of ((U/V) localized at m) for V subset U with finite local length.

    The m-torsion of U/V is W/(V+I) with W = ((V+I) : m^inf) ∩ (U+I), and a
    finite-length localized module equals its m-torsion. The length is the
    exact count of monomials inside the leading-term ideal of W but outside
    that of V+I (no limit detection needed).
    """
    key = (U.key(), V.key())
    cached = A._fsl.get(key)
    if cached is not None:
        return cached

    I = A.defining
    Vp = A.sum_interned(V, I)
    Up = A.sum_interned(U, I)
    for g in V.gens:
        if not Up.contains(g):
            raise EngineError("subquotient length needs V subset U modulo I")
    sat, _ = A.saturation_at_m(Vp)
    # verify the caller's finiteness claim: U must be m-locally inside sat
    for u in U.gens:
        if sat.contains(u):
            continue
        if contained_in_max_ideal(A.quotient_cached(sat, u)):
            raise EngineError(
                f"(U/V) localized at m has infinite length (witness {u})")
    W = A.intersect_cached(sat, Up)
    inner = leading_term_generators(Vp)
    outer = leading_term_generators(W)
    value = staircase.count_gap(inner, outer, A.ring.nvars)
    A._fsl[key] = value
    return value


# -- parameter systems -----------------------------------------------------


def validate_parameter_system(A: LocalRing, xs,
                              full_required: bool = False) -> ParameterSystem:
    """Check that xs is a (sub)system of parameters of A.

    A full system (len d) must give finite colength; a partial system must
    drop the dimension by exactly its length.
    """
    elements = tuple(A.ring.poly(x) for x in xs)
    d = A.dim
    if len(elements) > d:
        raise InvalidParameterSystemError(
            f"{len(elements)} elements exceed dim A = {d}")
    zero = A.ring.field.zero
    for e in elements:
        if not e.terms or e.constant_term() != zero:
            raise InvalidParameterSystemError(
                f"element {e} does not lie in the maximal ideal")
    if len(elements) == d:
        c = colength(A, Ideal(A.ring, elements))
        if c == INFINITE:
            raise InvalidParameterSystemError(
                f"colength of {ParameterSystem(elements, True)} is infinite; "
                "not a system of parameters")
        return ParameterSystem(elements, True)
    if full_required:
        raise InvalidParameterSystemError(
            f"need a full system of {d} parameters, got {len(elements)}")
    quotient = A.quotient_presentation(elements)
    qdim = local_dimension(quotient, A.config)
    if qdim != d - len(elements):
        raise InvalidParameterSystemError(
            f"dimension drop check failed: dim A/(xs) = {qdim}, "
            f"expected {d - len(elements)}")
    return ParameterSystem(elements, False)


def parameter_ideal(A: LocalRing, Q: ParameterSystem, power: int = 1) -> Ideal:
    return A.power_ideal(Q.elements, power)
