"""Associated graded ring data: Hilbert function, postulation number,
torsion of successive filter-regular quotients, and Castelnuovo-Mumford
regularity.

Every graded degree is realized as ideal arithmetic in A. Writing z_1..z_i
for the initial forms of the chosen elements x_1..x_i, the degree-n piece
of G/(z_1..z_i)G is Q^n / D_n with D_n = (x_1..x_i)Q^(n-1) + Q^(n+1), and
the degree-n piece of its torsion under the irrelevant ideal is detected
by colon conditions stabilized in the exponent.

Regularity is computed through the filter-regular stage maximum: the
largest degree carrying torsion among the quotients by successive initial
forms. The working horizon is theorem-backed (uniform regularity bound
plus slack) whenever the ring invariant is certified, so "zero beyond the
horizon" is a proof, not a guess.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from math import factorial

from .errors import (CapExceededError, EngineError, HorizonError,
                     InvalidParameterSystemError)
from .ideals import Ideal, ideal_quotient_by_ideal, ideal_sum, intersect
from .localring import (LocalRing, ParameterSystem, colength,
                        finite_subquotient_length, parameter_ideal,
                        validate_parameter_system)
from .reports import BoundEntry, IAEstimate, STABILIZED


def regularity_bound(ia_value: int, d: int) -> int:
    """The uniform regularity bound in terms of the ring invariant."""
    if d <= 0:
        return 0
    if d == 1:
        return max(ia_value - 1, 0)
    return max((4 * ia_value) ** factorial(d - 1) - ia_value - 1, 0)


def postulation_bound(ia_value: int, d: int) -> int:
    if d == 1:
        return max(ia_value, 1)
    return max((4 * ia_value) ** factorial(d - 1) - ia_value, 1)


reltype_bound = postulation_bound


def hilbert_g(A: LocalRing, Q: ParameterSystem, n: int) -> int:
    """h(n) = length of Q^n / Q^(n+1) = colength difference."""
    if n < 0:
        return 0
    hi = colength(A, parameter_ideal(A, Q, n + 1))
    lo = colength(A, parameter_ideal(A, Q, n)) if n > 0 else 0
    return hi - lo


def _gbinom(t: int, j: int) -> Fraction:
    num = 1
    for k in range(j):
        num *= (t - k)
    return Fraction(num, factorial(j))


@dataclass(frozen=True)
class PostulationFit:
    """Hilbert values, the fitted polynomial, and the postulation number."""

    values: tuple[int, ...]          # h(0..horizon)
    base: int                        # Newton anchor
    newton: tuple[int, ...]          # forward differences at the anchor
    postulation: int
    horizon: int

    def eval(self, n: int) -> int:
        total = Fraction(0)
        for j, c in enumerate(self.newton):
            total += c * _gbinom(n - self.base, j)
        if total.denominator != 1:
            raise EngineError("fitted Hilbert polynomial not integer-valued")
        return int(total)

    def coefficients(self) -> tuple[Fraction, ...]:
        """Dense coefficients of the fitted polynomial, constant first."""
        degree = len(self.newton) - 1
        coeffs = [Fraction(0)] * (degree + 1)
        # expand sum of c_j * binom(n - base, j)
        for j, c in enumerate(self.newton):
            poly = [Fraction(1)]
            for k in range(j):
                # multiply by (n - base - k)
                shifted = [Fraction(0)] + poly
                poly = [shifted[i] - (self.base + k) * (poly[i] if i < len(poly) else 0)
                        for i in range(len(shifted))]
            poly = [x / factorial(j) for x in poly]
            for i, v in enumerate(poly):
                coeffs[i] += c * v
        return tuple(coeffs)

    def as_dict(self) -> dict:
        return {"values": list(self.values), "postulation": self.postulation,
                "horizon": self.horizon,
                "poly": [str(c) for c in self.coefficients()]}


def _certified_bound(A: LocalRing, ia: IAEstimate | None,
                     override: int | None) -> int:
    """Theorem-backed vanishing bound for all graded torsion: the uniform
    regularity bound when the ring invariant is certified, else an explicit
    override."""
    if override is not None:
        return override
    if A.config.horizon_override is not None:
        return A.config.horizon_override
    if ia is None or ia.status != STABILIZED:
        raise HorizonError(
            "no certified working horizon: the ring invariant is not "
            "stabilized and no override was supplied")
    return regularity_bound(ia.value, A.dim)


def postulation(A: LocalRing, Q: ParameterSystem,
                ia: IAEstimate | None = None,
                horizon: int | None = None) -> PostulationFit:
    """Fit the Hilbert polynomial of the associated graded ring and return
    the least degree from which function and polynomial agree."""
    d = A.dim
    w = A.config.window
    # the postulation number is at most bound+1, so this horizon leaves a
    # full fit window inside the certified polynomial regime
    H = _certified_bound(A, ia, horizon) + 1 + d + w
    values = [hilbert_g(A, Q, n) for n in range(H + 1)]
    # the tail must look polynomial of degree < d: d-th differences vanish
    diffs = list(values)
    for _ in range(d):
        diffs = [diffs[i + 1] - diffs[i] for i in range(len(diffs) - 1)]
    if any(v != 0 for v in diffs[-w:]):
        raise HorizonError(
            f"Hilbert function tail of {Q} not stabilized by horizon {H}: "
            f"d-th differences end in {diffs[-w:]}")
    base = H - d + 1
    newton = []
    row = values[base:]
    for _ in range(d):
        newton.append(row[0])
        row = [row[i + 1] - row[i] for i in range(len(row) - 1)]
    fit = PostulationFit(tuple(values), base, tuple(newton), 0, H)
    disagree = [n for n in range(H + 1) if values[n] != fit.eval(n)]
    p = (disagree[-1] + 1) if disagree else 0
    if H - p + 1 < w:
        raise HorizonError(
            f"agreement window after the last disagreement is shorter than "
            f"{w} (p={p}, horizon={H})")
    return PostulationFit(tuple(values), base, tuple(newton), p, H)


@dataclass(frozen=True)
class GradedView:
    ring_id: str
    q: str
    hilbert: tuple[int, ...]
    fit: PostulationFit

    def as_dict(self) -> dict:
        return {"ring": self.ring_id, "Q": self.q,
                "hilbert": list(self.hilbert), **self.fit.as_dict()}


# -- graded components as ideal subquotients --------------------------------


def _qpow_plus_I(A: LocalRing, Q: ParameterSystem, n: int) -> Ideal:
    if n <= 0:
        return A.intern(Ideal(A.ring, [A.ring.one()]))
    return A.sum_interned(parameter_ideal(A, Q, n), A.defining)


def _dn_ideal(A: LocalRing, Q: ParameterSystem, prefix, n: int) -> Ideal:
    """(x_1..x_i) Q^(n-1) + Q^(n+1) + I, with Q^k = (1) for k <= 0."""
    out = _qpow_plus_I(A, Q, n + 1)
    if prefix:
        if n <= 1:
            pref = Ideal(A.ring, prefix)
        else:
            from .ideals import ideal_product
            pref = ideal_product(Ideal(A.ring, prefix),
                                 parameter_ideal(A, Q, n - 1))
        out = A.sum_interned(out, pref)
    return out


def plus_torsion_length(A: LocalRing, Q: ParameterSystem, prefix, n: int,
                        bound: int | None = None, ia=None,
                        with_exponent: bool = False):
    """Length of the degree-n torsion component of G/(z_1..z_i)G under the
    irrelevant ideal, the z_j being initial forms of the prefix elements.

    Realized as the length of
    ({f in Q^n : Q^m f in (x_1..x_i)Q^(n+m-1) + Q^(n+m+1)} + D_n) / D_n
    at the certified colon exponent m = bound - n + 1: torsion vanishes in
    degrees past the bound, so any degree-n torsion element is killed by
    that power of the irrelevant ideal and one colon evaluation is exact.
    (A stabilization window under-reports when torsion joins the colon
    chain late, e.g. in low degrees of the sharp d=1 family.)

    The colon is taken as an iterated quotient by the parameter ideal, so
    for a fixed stage all degrees share one cached chain.
    """
    prefix = tuple(prefix)
    if n < 0:
        raise ValueError("torsion degree must be >= 0")
    B = _certified_bound(A, ia, bound)
    m = max(B + 1 - n, 1)
    if m > A.config.cap_torsion:
        raise CapExceededError("cap_torsion", A.config.cap_torsion,
                               f"certified colon exponent {m} over the cap")
    D = _dn_ideal(A, Q, prefix, n)
    Qn = _qpow_plus_I(A, Q, n)
    colon = _dn_ideal(A, Q, prefix, n + m)
    Qideal = A.intern(Ideal(A.ring, Q.elements))
    for _ in range(m):
        colon = A.quotient_by_ideal_cached(colon, Qideal)
    numerator = A.sum_interned(A.intersect_cached(colon, Qn), D)
    val = finite_subquotient_length(A, numerator, D)
    return (val, m) if with_exponent else val


def filter_regular_component(A: LocalRing, Q: ParameterSystem, prefix,
                             x, n: int) -> int:
    """Length of the degree-n component of (0 : x*) in G/(z_1..z_i)G."""
    D_next = _dn_ideal(A, Q, tuple(prefix), n + 1)
    Qn = _qpow_plus_I(A, Q, n)
    D = _dn_ideal(A, Q, tuple(prefix), n)
    numerator = A.sum_interned(
        A.intersect_cached(A.quotient_cached(D_next, x), Qn), D)
    return finite_subquotient_length(A, numerator, D)


@dataclass(frozen=True)
class FilterRegularCertificate:
    element: object                  # the chosen Polynomial
    window: tuple[int, ...]          # degrees checked
    attempts: int
    seed: int | None

    def as_dict(self) -> dict:
        return {"element": str(self.element), "window": list(self.window),
                "attempts": self.attempts, "seed": self.seed}


def filter_regular_initial_form(A: LocalRing, Q: ParameterSystem,
                                seed: int | None = None,
                                prefix=(), horizon: int | None = None,
                                ia: IAEstimate | None = None):
    """Find an element of Q whose initial form is filter-regular on
    G/(prefix)G, certified by a zero window past the working horizon.

    Tries the original parameters first (deterministic), then seeded random
    combinations; reproducible for a fixed seed.
    """
    H = _certified_bound(A, ia, horizon) + A.config.horizon_slack
    w = A.config.window
    window = tuple(range(H + 1, H + 1 + w))
    prefix = tuple(prefix)
    rng = random.Random(A.config.seed if seed is None else seed)
    p = A.ring.field.characteristic or 101

    candidates = list(Q.elements[len(prefix):]) + list(Q.elements[:len(prefix)])
    attempts = 0
    tried = set()
    while True:
        if candidates:
            cand = candidates.pop(0)
        else:
            coeffs = [rng.randrange(1, p) for _ in Q.elements]
            cand = sum((c * x for c, x in zip(coeffs, Q.elements)),
                       A.ring.zero())
        ck = cand.canonical_key()
        if ck in tried:
            continue
        tried.add(ck)
        attempts += 1
        if attempts > A.config.fr_retries + len(Q.elements):
            raise CapExceededError(
                "fr_retries", A.config.fr_retries,
                f"no filter-regular element found; last window {window}")
        if not _extends_parameters(A, prefix, cand):
            continue
        if all(filter_regular_component(A, Q, prefix, cand, n) == 0
               for n in window):
            return cand, FilterRegularCertificate(cand, window, attempts, seed)


def _extends_parameters(A: LocalRing, prefix, cand) -> bool:
    try:
        validate_parameter_system(A, list(prefix) + [cand])
        return True
    except InvalidParameterSystemError:
        return False


@dataclass(frozen=True)
class RegularityCertificate:
    """reg value with the filter-regular sequence and per-stage evidence."""

    value: int
    sequence: tuple                      # filter-regular elements used
    stage_ends: tuple                    # end of torsion per stage (None = empty)
    horizon: int
    seed: int | None

    def as_dict(self) -> dict:
        return {"reg": self.value,
                "sequence": [str(z) for z in self.sequence],
                "stage_ends": [e for e in self.stage_ends],
                "horizon": self.horizon, "seed": self.seed}


def regularity_g(A: LocalRing, Q: ParameterSystem,
                 ia: IAEstimate | None = None,
                 horizon: int | None = None,
                 seed: int | None = None) -> RegularityCertificate:
    """Castelnuovo-Mumford regularity of the associated graded ring.

    Builds a filter-regular sequence of initial forms and takes the largest
    torsion end over the successive quotients (stages 0..d); a stage with
    no torsion contributes nothing, and the result is floored at 0.
    """
    if not Q.full:
        raise InvalidParameterSystemError("regularity needs a full system")
    B = _certified_bound(A, ia, horizon)
    H = B + A.config.horizon_slack   # scanned degrees; torsion provably 0 past B
    d = A.dim
    prefix: list = []
    sequence = []
    stage_ends = []
    for stage in range(d + 1):
        end = None
        for n in range(H + 1):
            if plus_torsion_length(A, Q, prefix, n, bound=B) > 0:
                end = n
        stage_ends.append(end)
        if stage == d:
            break
        z, _cert = filter_regular_initial_form(
            A, Q, seed=None if seed is None else seed + stage,
            prefix=prefix, horizon=B)
        sequence.append(z)
        prefix.append(z)
    value = max([e for e in stage_ends if e is not None], default=0)
    value = max(value, 0)
    return RegularityCertificate(value, tuple(sequence), tuple(stage_ends),
                                 H, seed)


def mumford_gap_check(A: LocalRing, Q: ParameterSystem, ia: IAEstimate,
                      reg_cert: RegularityCertificate | None = None,
                      fit: PostulationFit | None = None,
                      n_range=None, seed: int | None = None):
    """Numeric check of the hyperplane-section gap estimate (d >= 2 only).

    For each n: the gap p(n) - h_{G/L}(n) is bounded by the two colon
    lengths, and reg is bounded by n plus the gap once n reaches the
    regularity of the section. Returns the BoundEntry list.
    """
    if A.dim < 2:
        return [BoundEntry.skip("Lemma2.4", str(Q), "needs d >= 2")]
    if fit is None:
        fit = postulation(A, Q, ia)
    if reg_cert is None:
        reg_cert = regularity_g(A, Q, ia, seed=seed)
    x, _cert = filter_regular_initial_form(A, Q, seed=seed, prefix=(), ia=ia)
    section_reg = _section_regularity(A, Q, x)
    if n_range is None:
        p = fit.postulation
        n_range = range(p, p + 3)
    entries = []
    qstr = str(Q)
    I = A.defining
    for n in n_range:
        if n < section_reg:
            entries.append(BoundEntry.skip(
                "Lemma2.4", qstr,
                f"hypothesis n >= reg of the section ({section_reg}) fails",
                n=n))
            continue
        torsion, mexp = plus_torsion_length(A, Q, (), n, ia=ia,
                                            with_exponent=True)
        pg = fit.eval(n)
        hgl = hilbert_g(A, Q, n) - torsion
        lhs = pg - hgl
        Qn1 = _qpow_plus_I(A, Q, n + 1)
        Qn = _qpow_plus_I(A, Q, n)
        c1 = finite_subquotient_length(
            A, A.quotient_cached(Qn1, x), Qn)
        Qnm1 = _qpow_plus_I(A, Q, n + mexp + 1)
        c2 = finite_subquotient_length(
            A, A.quotient_cached(Qnm1, x ** mexp), Qn1)
        entries.append(BoundEntry.check("Lemma2.4", qstr, lhs, c1 + c2,
                                        n=n, m=mexp))
        entries.append(BoundEntry.check("Thm2.2", qstr, reg_cert.value,
                                        n + lhs, n=n))
    return entries


def _section_regularity(A: LocalRing, Q: ParameterSystem, x) -> int:
    """Regularity of the associated graded ring of the hyperplane section
    A/(x), computed recursively on the quotient presentation."""
    from .localring import RingPresentation, make_local_ring
    pres = RingPresentation(A.presentation.characteristic,
                            A.presentation.variables,
                            A.presentation.defining + (x,))
    B = make_local_ring(pres, A.config)
    params = _restrict_parameters(B, Q, x)
    ia_b = _ia_of(B, params)
    cert = regularity_g(B, params, ia_b)
    return cert.value


def _restrict_parameters(B: LocalRing, Q: ParameterSystem,
                         x) -> ParameterSystem:
    """A valid parameter system of the section, from the remaining ones."""
    from itertools import combinations
    elems = [B.ring.poly(e) for e in Q.elements]
    for combo in combinations(elems, B.dim):
        try:
            return validate_parameter_system(B, list(combo))
        except InvalidParameterSystemError:
            continue
    raise InvalidParameterSystemError(
        f"no subset of {Q} restricts to parameters of the section")


def _ia_of(B: LocalRing, params: ParameterSystem) -> IAEstimate:
    from .invariants import invariant_ia
    return invariant_ia(B, params)
