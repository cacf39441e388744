"""Multiplicity, the deviation I(Q,A), the ring invariant I(A), and the
colon-length bound checks.

e(Q,A) is d! times the leading coefficient of the Hilbert-Samuel
polynomial, read off as the stabilized d-th finite difference of the
colength sequence. I(A) is estimated through the non-decreasing trace
I((x_1^n..x_d^n), A); the sup is attained exactly when the ring is
generalized Cohen-Macaulay, so the status (stabilized / divergent /
cap-reached) is always reported alongside the value.
"""

from __future__ import annotations

from math import comb

from .config import EngineConfig
from .errors import CapExceededError, EngineError, InvalidParameterSystemError
from .ideals import Ideal, INFINITE, contained_in_max_ideal, ideal_sum
from .localring import (LocalRing, ParameterSystem, RingPresentation,
                        colength, finite_subquotient_length, make_local_ring,
                        parameter_ideal, validate_parameter_system)
from .reports import (BoundEntry, CAP_REACHED, DIVERGENT, IAEstimate,
                      InvariantRecord, ColonTestEntry, ColonTestReport,
                      STABILIZED)


def hilbert_samuel(A: LocalRing, Q: ParameterSystem, upto: int) -> list[int]:
    """[colength(A, Q^(k+1)) for k in 0..upto], all finite."""
    values = []
    for k in range(upto + 1):
        c = colength(A, parameter_ideal(A, Q, k + 1))
        if c == INFINITE:
            raise EngineError(f"{Q} is not m-primary: infinite colength")
        values.append(c)
    return values


def multiplicity(A: LocalRing, Q: ParameterSystem,
                 ia_value: int | None = None):
    """e(Q,A) with the fit window used; cross-checked against the Hilbert
    bound when I(A) is known."""
    if not Q.full:
        raise InvalidParameterSystemError("multiplicity needs a full system")
    d = A.dim
    if d == 0:
        e = colength(A, Ideal(A.ring, []))
        return e, (0, 0)
    w = A.config.window
    values: list[int] = []
    k = 0
    cap = A.config.cap_fit
    while k <= cap:
        values = hilbert_samuel(A, Q, k)
        if len(values) >= d + w + 1:
            diffs = values
            for _ in range(d):
                diffs = [diffs[i + 1] - diffs[i] for i in range(len(diffs) - 1)]
            tail = diffs[-w:]
            if len(tail) == w and all(v == tail[0] for v in tail):
                e = tail[0]
                if e <= 0:
                    raise EngineError(f"non-positive multiplicity fit for {Q}")
                if ia_value is not None:
                    _hilbert_cross_check(values, d, e, ia_value, str(Q))
                return e, (len(values) - w - d, len(values) - 1)
        k += 1
    raise CapExceededError("cap_fit", cap,
                           f"Hilbert-Samuel fit for {Q} did not stabilize")


def _hilbert_cross_check(values, d, e, ia, qstr):
    for n, ln in enumerate(values):
        bound = comb(n + d, d) * e + comb(n + d - 1, d - 1) * ia
        if ln > bound:
            raise EngineError(
                f"Hilbert bound violated at n={n} for Q={qstr}: {ln} > {bound}")


def invariant_iq(A: LocalRing, Q: ParameterSystem,
                 ring_id: str = "") -> InvariantRecord:
    """The deviation colength - multiplicity (never negative)."""
    ell = colength(A, parameter_ideal(A, Q, 1))
    if ell == INFINITE:
        raise EngineError(f"{Q} is not m-primary")
    e, window = multiplicity(A, Q)
    iq = ell - e
    if iq < 0:
        raise EngineError(
            f"negative deviation {iq} for {Q}: engine inconsistency")
    return InvariantRecord(ring_id or str(A.presentation), str(Q),
                           ell, e, iq, window)


def powered_system(A: LocalRing, Q: ParameterSystem, n: int) -> ParameterSystem:
    """(x_1^n, ..., x_d^n), validated."""
    return validate_parameter_system(A, [x ** n for x in Q.elements])


def invariant_ia(A: LocalRing, Q: ParameterSystem,
                 n_max: int | None = None) -> IAEstimate:
    """Estimate I(A) as the sup of the non-decreasing power trace.

    Stabilized: the final window is constant. Divergent: the trace is
    strictly increasing across the final window, or exceeds the divergence
    threshold. Otherwise cap-reached.
    """
    if not Q.full:
        raise InvalidParameterSystemError("invariant_ia needs a full system")
    cfg = A.config
    if n_max is None:
        n_max = cfg.ia_nmax
    w = cfg.window
    trace: list[int] = []
    for n in range(1, n_max + 1):
        rec = invariant_iq(A, powered_system(A, Q, n))
        if trace and rec.iq < trace[-1]:
            raise EngineError(
                f"I-trace decreased at n={n}: engine inconsistency")
        trace.append(rec.iq)
        if len(trace) >= w and all(v == trace[-1] for v in trace[-w:]):
            return IAEstimate(trace[-1], STABILIZED, tuple(trace))
    threshold = cfg.divergence_factor * (trace[0] + 1)
    strictly_up = (len(trace) >= w + 1
                   and all(trace[i] < trace[i + 1]
                           for i in range(len(trace) - w - 1, len(trace) - 1)))
    if strictly_up or trace[-1] > threshold:
        return IAEstimate(trace[-1], DIVERGENT, tuple(trace))
    return IAEstimate(trace[-1], CAP_REACHED, tuple(trace))


def quotient_ring_by_subsystem(A: LocalRing, J: ParameterSystem,
                               power: int = 1) -> LocalRing:
    """The local ring A/J^power for a partial system J; dimension checked."""
    if J.full:
        raise InvalidParameterSystemError(
            "quotient by a full system is artinian; need a partial system")
    i = len(J.elements)
    Jpow = A.power_ideal(J.elements, power)
    pres = RingPresentation(A.presentation.characteristic,
                            A.presentation.variables,
                            A.presentation.defining + Jpow.gens)
    B = make_local_ring(pres, A.config)
    if B.dim != A.dim - i:
        raise InvalidParameterSystemError(
            f"dimension of A/J^{power} is {B.dim}, expected {A.dim - i}; "
            "not a subsystem of parameters")
    return B


def check_theorem_invariant_bound(A: LocalRing, J: ParameterSystem, n: int,
                                  extension, ia_value: int,
                                  n_max: int | None = None) -> BoundEntry:
    """I(A/J^(n+1)) <= binom(n+i-1, i-1) * I(A) for a partial system J.

    The invariant of the quotient is evaluated on the parameter system
    extending J (the images of the remaining parameters).
    """
    i = len(J.elements)
    label = "Thm1.2"
    qstr = str(J)
    if not (0 < i < A.dim):
        return BoundEntry.skip(label, qstr, f"needs 0 < i < d, got i={i}, d={A.dim}", n=n)
    B = quotient_ring_by_subsystem(A, J, n + 1)
    ext = validate_parameter_system(B, extension)
    est = invariant_ia(B, ext, n_max)
    rhs = comb(n + i - 1, i - 1) * ia_value
    if est.status != STABILIZED:
        return BoundEntry(label, qstr, n, None, est.value, rhs, "fail",
                          f"quotient invariant {est.status}: trace {list(est.trace)}")
    return BoundEntry.check(label, qstr, est.value, rhs, n=n)


def check_colon_bounds(A: LocalRing, Q: ParameterSystem, n: int, m: int,
                       ia_value: int):
    """Corollary-style colon-length bounds; returns the entry pair.

    First: length of (J^(n+1) : x_d^m) / J^(n+1) for J the first d-1
    parameters, bounded by binom(n+d-2, d-2) * I(A). Second: length of
    (Q^(n+m) : x_d^m) / Q^n, bounded the same way (d >= 2 only).
    """
    d = A.dim
    qstr = str(Q)
    if d < 2:
        return (BoundEntry.skip("Cor1.3", qstr, "needs d >= 2", n=n, m=m),
                BoundEntry.skip("Cor1.4", qstr, "needs d >= 2", n=n, m=m))
    if m < 1:
        raise ValueError("colon bounds need m >= 1")
    J = Q.elements[:-1]
    xd = Q.elements[-1]
    rhs = comb(n + d - 2, d - 2) * ia_value
    I = A.defining

    Jn1 = ideal_sum(A.power_ideal(J, n + 1), I)
    colon13 = A.quotient_cached(Jn1, xd ** m)
    lhs13 = finite_subquotient_length(A, colon13, Jn1)
    e13 = BoundEntry.check("Cor1.3", qstr, lhs13, rhs, n=n, m=m)

    Qnm = ideal_sum(parameter_ideal(A, Q, n + m), I)
    Qn = ideal_sum(parameter_ideal(A, Q, n), I)
    colon14 = A.quotient_cached(Qnm, xd ** m)
    lhs14 = finite_subquotient_length(A, colon14, Qn)
    e14 = BoundEntry.check("Cor1.4", qstr, lhs14, rhs, n=n, m=m)
    return (e13, e14)


def gcm_colon_test(A: LocalRing, sops, n_cap: int | None = None) -> ColonTestReport:
    """Colon containment test behind the gCM characterization.

    For each full system, the least n with
    m^n * ((x_1..x_{d-1}) : x_d^inf) inside (x_1..x_{d-1}) locally at m;
    n = 0 means the saturated colon already equals the ideal. Reports the
    max over the sample and whether a uniform n exists within the cap.
    """
    if n_cap is None:
        n_cap = A.config.cap_colon
    entries = []
    uniform = True
    max_exp: int | None = None
    for Q in sops:
        if not Q.full:
            raise InvalidParameterSystemError("gcm_colon_test needs full systems")
        exp = colon_exponent(A, Q, n_cap)
        if exp is None:
            uniform = False
            entries.append(ColonTestEntry(str(Q), None,
                                          f"no containment within cap {n_cap}"))
        else:
            entries.append(ColonTestEntry(str(Q), exp))
            if max_exp is None or exp > max_exp:
                max_exp = exp
    return ColonTestReport(tuple(entries), uniform, max_exp)


def colon_exponent(A: LocalRing, Q: ParameterSystem,
                   n_cap: int) -> int | None:
    """Least n certifying the colon containment for one system, or None."""
    I = A.defining
    J = ideal_sum(Ideal(A.ring, Q.elements[:-1]), I)
    xd = Q.elements[-1]
    sat_colon, _ = A.saturation_at_m(_colon_by_powers(A, J, xd))
    target = J
    for n in range(n_cap + 1):
        if all(_locally_contains(A, target, g) for g in sat_colon.gens):
            return n
        target = _colon_by_m(A, target)
    return None


def _colon_by_powers(A: LocalRing, J: Ideal, x) -> Ideal:
    """J : x^inf (the union of the colon chain)."""
    from .ideals import saturate
    sat, _ = saturate(J, Ideal(A.ring, [x]), A.config.cap_saturate)
    return sat


def _colon_by_m(A: LocalRing, U: Ideal) -> Ideal:
    from .ideals import ideal_quotient_by_ideal
    return ideal_quotient_by_ideal(U, A.mpow(1))


def _locally_contains(A: LocalRing, U: Ideal, g) -> bool:
    """g in U localized at m, decided by (U : g) not inside m."""
    if U.contains(g):
        return True
    return not contained_in_max_ideal(A.quotient_cached(U, g))
