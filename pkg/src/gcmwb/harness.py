"""Per-ring verification suites, the detection experiment for the
uniform-bound characterization, and report emission.

A suite determines the gCM status first (invariant trace plus colon test),
then evaluates one BoundEntry per (bound, parameter system, grid point).
Erroring entries are recorded and do not abort the suite; a FAIL on a
verified-gCM ring is flagged as a contradiction, since the suite doubles
as the engine's own correctness oracle. Reports are deterministic: the
same configuration and seeds give byte-identical json.
"""

from __future__ import annotations

import csv
import io
import json
import random
from dataclasses import dataclass, field
from math import comb

from .config import EngineConfig
from .errors import EngineError, InvalidParameterSystemError
from .graded import (mumford_gap_check, postulation, postulation_bound,
                     regularity_bound, regularity_g, reltype_bound)
from .ideals import Ideal, saturate
from .invariants import (check_colon_bounds, check_theorem_invariant_bound,
                         colon_exponent, gcm_colon_test, invariant_ia,
                         multiplicity)
from .localring import (LocalRing, ParameterSystem, colength, parameter_ideal,
                        validate_parameter_system)
from .reports import (BoundEntry, BoundReport, ColonTestReport, FAIL,
                      IAEstimate, STABILIZED)
from .rees import rees_presentation


def sample_parameter_systems(A: LocalRing, base: ParameterSystem, count: int,
                             rng: random.Random):
    """Deterministic sample: the base system, its power family, and random
    small-coefficient linear combinations (validated, deduplicated)."""
    out = [base]
    seen = {base.key()}
    d = len(base.elements)

    def try_add(elems) -> bool:
        try:
            ps = validate_parameter_system(A, elems)
        except (InvalidParameterSystemError, EngineError):
            return False
        if ps.key() in seen:
            return False
        seen.add(ps.key())
        out.append(ps)
        return True

    n = 2
    while len(out) < count and n <= 3:
        try_add([x ** n for x in base.elements])
        n += 1
    attempts = 0
    while len(out) < count and attempts < 50 * count:
        attempts += 1
        rows = []
        for i in range(d):
            coeffs = [rng.randrange(0, 4) for _ in range(d)]
            coeffs[i] = rng.randrange(1, 4)
            rows.append(sum((c * x for c, x in zip(coeffs, base.elements)),
                            A.ring.zero()))
        try_add(rows)
    if len(out) < count:
        raise EngineError(f"could not sample {count} parameter systems")
    return out[:count]


def run_suite(A: LocalRing, Qs, grid: tuple[int, int] | None = None,
              ring_id: str = "") -> BoundReport:
    """Every bound check for one ring over the given parameter systems."""
    if not Qs:
        raise ValueError("run_suite needs at least one parameter system")
    cfg = A.config
    n_max, m_max = grid if grid else (cfg.suite_n_max, cfg.suite_m_max)
    ring_id = ring_id or str(A.presentation)
    d = A.dim

    ia = invariant_ia(A, Qs[0])
    colon = gcm_colon_test(A, Qs)
    gcm = ia.status == STABILIZED and colon.uniform
    report = BoundReport(ring_id, d, ia, colon, gcm,
                         config=_config_snapshot(cfg))

    for Q in Qs:
        _suite_for_system(A, Q, ia, gcm, n_max, m_max, report)
    return report.finalize()


def _suite_for_system(A: LocalRing, Q: ParameterSystem, ia: IAEstimate,
                      gcm: bool, n_max: int, m_max: int, report: BoundReport):
    d = A.dim
    qstr = str(Q)
    entries = report.entries

    # Hilbert-function bound, every sampled n
    if ia.status == STABILIZED:
        try:
            e, _ = multiplicity(A, Q)
            for n in range(n_max + 1):
                lhs = colength(A, parameter_ideal(A, Q, n + 1))
                rhs = comb(n + d, d) * e + comb(n + d - 1, d - 1) * ia.value
                entries.append(BoundEntry.check("Lemma1.1", qstr, lhs, rhs, n=n))
        except EngineError as ex:
            entries.append(BoundEntry.error("Lemma1.1", qstr, str(ex)))
    else:
        entries.append(BoundEntry.skip(
            "Lemma1.1", qstr, f"ring invariant {ia.status}; bound undefined"))

    if not gcm:
        for bound in ("Thm2.5", "Cor2.6", "Cor2.7", "Thm1.2",
                      "Cor1.3", "Cor1.4", "Lemma2.4"):
            entries.append(BoundEntry.skip(
                bound, qstr, "ring not verified generalized Cohen-Macaulay"))
        return

    seed = A.config.seed
    fit = None
    try:
        fit = postulation(A, Q, ia)
        entries.append(BoundEntry.check("Cor2.6", qstr, fit.postulation,
                                        postulation_bound(ia.value, d)))
    except EngineError as ex:
        entries.append(BoundEntry.error("Cor2.6", qstr, str(ex)))

    reg_cert = None
    try:
        reg_cert = regularity_g(A, Q, ia, seed=seed)
        entries.append(BoundEntry.check("Thm2.5", qstr, reg_cert.value,
                                        regularity_bound(ia.value, d)))
    except EngineError as ex:
        entries.append(BoundEntry.error("Thm2.5", qstr, str(ex)))

    try:
        rp = rees_presentation(A, Q)
        entries.append(BoundEntry.check("Cor2.7", qstr, rp.relation_type,
                                        reltype_bound(ia.value, d)))
    except EngineError as ex:
        entries.append(BoundEntry.error("Cor2.7", qstr, str(ex)))

    if d == 1:
        for bound in ("Thm1.2", "Cor1.3", "Cor1.4", "Lemma2.4"):
            entries.append(BoundEntry.skip(bound, qstr, "needs d >= 2"))
        return

    for i in range(1, d):
        J = ParameterSystem(Q.elements[:i], False)
        extension = list(Q.elements[i:])
        for n in range(min(2, n_max) + 1):
            try:
                entries.append(check_theorem_invariant_bound(
                    A, J, n, extension, ia.value))
            except EngineError as ex:
                entries.append(BoundEntry.error("Thm1.2", str(J), str(ex), n=n))

    for n in range(min(3, n_max) + 1):
        for m in range(1, m_max + 1):
            try:
                e13, e14 = check_colon_bounds(A, Q, n, m, ia.value)
                entries.append(e13)
                entries.append(e14)
            except EngineError as ex:
                entries.append(BoundEntry.error("Cor1.3/1.4", qstr, str(ex),
                                                n=n, m=m))

    try:
        entries.extend(mumford_gap_check(A, Q, ia, reg_cert=reg_cert,
                                         fit=fit, seed=seed))
    except EngineError as ex:
        entries.append(BoundEntry.error("Lemma2.4", qstr, str(ex)))


def _config_snapshot(cfg: EngineConfig) -> dict:
    out = cfg.as_dict()
    return {"caps": {k: v for k, v in out.items() if k.startswith("cap_")},
            "seeds": {"seed": cfg.seed},
            "char": cfg.characteristic,
            "window": cfg.window,
            "ia_nmax": cfg.ia_nmax,
            "horizon_slack": cfg.horizon_slack}


# -- the detection experiment ------------------------------------------------


@dataclass
class Theorem28Sample:
    q: str
    colon_exp: int | None
    reltype: int
    quotient_reltype: int | None
    ann_exponent: int | None
    crosscheck: str = ""

    def as_dict(self) -> dict:
        return {"Q": self.q, "colon_exponent": self.colon_exp,
                "reltype": self.reltype,
                "quotient_reltype": self.quotient_reltype,
                "ann_exponent": self.ann_exponent,
                "crosscheck": self.crosscheck}


@dataclass
class Theorem28Report:
    ring_id: str
    verdict: str
    r_obs: int
    samples: list[Theorem28Sample] = field(default_factory=list)
    note: str = ""
    config: dict = field(default_factory=dict)

    def as_dict(self) -> dict:
        return {"schema_version": 1, "ring": self.ring_id,
                "verdict": self.verdict, "r_obs": self.r_obs,
                "samples": [s.as_dict() for s in self.samples],
                "note": self.note, "config": self.config}


GCM_CONSISTENT = "gCM-consistent (uniformly bounded)"
NOT_GCM = "not gCM (growth detected)"
INCONCLUSIVE = "inconclusive"


def theorem28_experiment(A: LocalRing, sop_family, budget: int,
                         ring_id: str = "") -> Theorem28Report:
    """Sample parameter systems, record relation types and colon exponents,
    and judge whether a uniform bound is plausible.

    For each sample the dimension-one quotient by the length-(d-1) prefix
    is examined through its Rees presentation: its relation type is
    compared with the stabilization exponent of the annihilator chain of
    the last parameter, the torsion shape appearing in the equivalence
    proof. The cross-check verifies the colon exponent against r_obs times
    the number of ambient variables.
    """
    if budget < 1:
        raise ValueError("budget must be >= 1")
    s = A.ring.nvars
    samples: list[Theorem28Sample] = []
    exponents: list[int] = []
    r_obs = 0
    for raw in sop_family:
        if len(samples) >= budget:
            break
        Q = raw if isinstance(raw, ParameterSystem) else \
            validate_parameter_system(A, list(raw))
        exp = colon_exponent(A, Q, A.config.cap_colon)
        rt = rees_presentation(A, Q).relation_type
        q_rt, ann_e = _quotient_rees_data(A, Q)
        r_obs = max(r_obs, rt, q_rt or 0)
        if exp is not None:
            exponents.append(exp)
        samples.append(Theorem28Sample(str(Q), exp, rt, q_rt, ann_e))

    for smp in samples:
        if smp.colon_exp is None:
            smp.crosscheck = "colon exponent beyond cap"
        else:
            ok = smp.colon_exp <= r_obs * s
            smp.crosscheck = ("pass" if ok else "fail") + \
                f" (exponent {smp.colon_exp} vs r_obs*s = {r_obs * s})"

    if any(smp.colon_exp is None for smp in samples):
        verdict = NOT_GCM
        note = "some colon exponent exceeded the cap"
    elif (len(exponents) >= 3
          and all(exponents[i] < exponents[i + 1]
                  for i in range(len(exponents) - 3, len(exponents) - 1))
          and exponents[-1] == max(exponents)
          and exponents[-1] > exponents[0]):
        verdict = NOT_GCM
        note = f"colon exponents grow along the family: {exponents}"
    elif len(samples) >= 2:
        verdict = GCM_CONSISTENT
        note = f"colon exponents bounded by {max(exponents, default=0)}"
    else:
        verdict = INCONCLUSIVE
        note = "budget exhausted before a trend was visible"
    return Theorem28Report(ring_id or str(A.presentation), verdict, r_obs,
                           samples, note, _config_snapshot(A.config))


def _quotient_rees_data(A: LocalRing, Q: ParameterSystem):
    """Relation type of the last parameter on A/(prefix), plus the
    stabilization exponent of the annihilator chain 0 : x^n there."""
    from .invariants import quotient_ring_by_subsystem
    d = A.dim
    if d == 1:
        B = A
    else:
        J = ParameterSystem(Q.elements[:d - 1], False)
        try:
            B = quotient_ring_by_subsystem(A, J, 1)
        except (InvalidParameterSystemError, EngineError):
            return None, None
    x = B.ring.poly(Q.elements[-1])
    try:
        Qb = validate_parameter_system(B, [x])
    except InvalidParameterSystemError:
        return None, None
    rt = rees_presentation(B, Qb).relation_type
    _, ann_e = saturate(B.defining if B.defining.gens else Ideal(B.ring, []),
                        Ideal(B.ring, [x]), B.config.cap_saturate)
    return rt, ann_e


# -- emission ----------------------------------------------------------------


def emit_report(rep, fmt: str = "text") -> str:
    """Deterministic serialization of a BoundReport or Theorem28Report."""
    if fmt == "json":
        return json.dumps(rep.as_dict(), sort_keys=True, indent=2) + "\n"
    if fmt == "csv":
        return _emit_csv(rep)
    if fmt == "text":
        return _emit_text(rep)
    raise ValueError(f"unknown format {fmt!r}")


def _emit_csv(rep) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    if isinstance(rep, BoundReport):
        writer.writerow(["bound", "Q", "n", "m", "lhs", "rhs", "verdict",
                         "note"])
        for e in rep.entries:
            writer.writerow([e.bound, e.q, e.n, e.m, e.lhs, e.rhs, e.verdict,
                             e.note])
    else:
        writer.writerow(["Q", "colon_exponent", "reltype", "quotient_reltype",
                         "ann_exponent", "crosscheck"])
        for smp in rep.samples:
            writer.writerow([smp.q, smp.colon_exp, smp.reltype,
                             smp.quotient_reltype, smp.ann_exponent,
                             smp.crosscheck])
    return buf.getvalue()


def _emit_text(rep) -> str:
    lines = [f"gcmwb report (schema 1)"]
    if isinstance(rep, BoundReport):
        lines.append(f"ring: {rep.ring_id}   d = {rep.d}")
        lines.append(f"I(A): value={rep.ia.value} status={rep.ia.status} "
                     f"trace={list(rep.ia.trace)}")
        lines.append(f"  scope: {rep.ia.scope_note}")
        if rep.colon is not None:
            lines.append(f"colon test: uniform={rep.colon.uniform} "
                         f"max exponent={rep.colon.max_exponent}")
        lines.append(f"gCM verified: {rep.gcm_verified}")
        for e in rep.entries:
            lines.append(e.text_line())
        c = rep.counts()
        lines.append(f"summary: {c['pass']} pass, {c['fail']} fail, "
                     f"{c['skip']} skip, {c['error']} error")
        if rep.contradiction:
            lines.append("CONTRADICTION: a bound failed on a verified gCM "
                         "ring (engine bug or horizon issue)")
    else:
        lines.append(f"ring: {rep.ring_id}")
        lines.append(f"verdict: {rep.verdict}   r_obs = {rep.r_obs}")
        lines.append(f"note: {rep.note}")
        for smp in rep.samples:
            lines.append(f"  Q={smp.q}: colon_exp={smp.colon_exp} "
                         f"reltype={smp.reltype} "
                         f"quot_reltype={smp.quotient_reltype} "
                         f"ann_exp={smp.ann_exponent} [{smp.crosscheck}]")
    return "\n".join(lines) + "\n"
