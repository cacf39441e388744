"""Report datatypes shared by the invariant checks and the bound harness."""

from __future__ import annotations

from dataclasses import dataclass, field


PASS = "pass"
FAIL = "fail"
SKIP = "skip"
ERROR = "error"


@dataclass(frozen=True)
class BoundEntry:
    """One checked inequality: verdict is pass iff lhs <= rhs."""

    bound: str
    q: str
    n: int | None = None
    m: int | None = None
    lhs: int | None = None
    rhs: int | None = None
    verdict: str = PASS
    note: str = ""

    @staticmethod
    def check(bound: str, q: str, lhs, rhs, n=None, m=None,
              note: str = "") -> "BoundEntry":
        verdict = PASS if lhs <= rhs else FAIL
        return BoundEntry(bound, q, n, m, lhs, rhs, verdict, note)

    @staticmethod
    def skip(bound: str, q: str, reason: str, n=None, m=None) -> "BoundEntry":
        return BoundEntry(bound, q, n, m, None, None, SKIP, reason)

    @staticmethod
    def error(bound: str, q: str, reason: str, n=None, m=None) -> "BoundEntry":
        return BoundEntry(bound, q, n, m, None, None, ERROR, reason)

    def sort_key(self):
        return (self.bound, self.q,
                -1 if self.n is None else self.n,
                -1 if self.m is None else self.m)

    def as_dict(self) -> dict:
        return {"bound": self.bound, "Q": self.q, "n": self.n, "m": self.m,
                "lhs": self.lhs, "rhs": self.rhs, "verdict": self.verdict,
                "note": self.note}

    def text_line(self) -> str:
        if self.verdict in (SKIP, ERROR):
            return f"{self.bound}: {self.verdict} ({self.note}) [Q={self.q}]"
        sharp = " (sharp)" if self.lhs == self.rhs else ""
        params = f"[Q={self.q}"
        if self.n is not None:
            params += f", n={self.n}"
        if self.m is not None:
            params += f", m={self.m}"
        params += "]"
        word = "PASS" if self.verdict == PASS else "FAIL"
        return f"{self.bound}: {self.lhs} ≤ {self.rhs} {word}{sharp} {params}"


@dataclass(frozen=True)
class InvariantRecord:
    """colength, multiplicity and their deviation for one parameter ideal."""

    ring_id: str
    q: str
    colength: int
    multiplicity: int
    iq: int
    fit_window: tuple[int, int]

    def as_dict(self) -> dict:
        return {"ring": self.ring_id, "Q": self.q, "colength": self.colength,
                "multiplicity": self.multiplicity, "iq": self.iq,
                "fit_window": list(self.fit_window)}


STABILIZED = "stabilized"
DIVERGENT = "divergent"
CAP_REACHED = "cap-reached"


@dataclass(frozen=True)
class IAEstimate:
    """Sup-over-powers estimate of the ring invariant, with its trace.

    The sup is certain only over the sampled power family; every report
    carries this scope note.
    """

    value: int
    status: str
    trace: tuple[int, ...]
    scope_note: str = ("sup taken over the sampled power family of one "
                       "parameter system, not over all parameter ideals")

    def as_dict(self) -> dict:
        return {"value": self.value, "status": self.status,
                "trace": list(self.trace), "scope": self.scope_note}


@dataclass(frozen=True)
class ColonTestEntry:
    q: str
    exponent: int | None   # least n with m^n * saturated colon inside the ideal
    note: str = ""

    def as_dict(self) -> dict:
        return {"Q": self.q, "exponent": self.exponent, "note": self.note}


@dataclass(frozen=True)
class ColonTestReport:
    entries: tuple[ColonTestEntry, ...]
    uniform: bool
    max_exponent: int | None

    def as_dict(self) -> dict:
        return {"entries": [e.as_dict() for e in self.entries],
                "uniform": self.uniform, "max_exponent": self.max_exponent}


@dataclass
class BoundReport:
    """All bound checks for one ring, plus the gCM evidence used."""

    ring_id: str
    d: int
    ia: IAEstimate
    colon: ColonTestReport | None
    gcm_verified: bool
    entries: list[BoundEntry] = field(default_factory=list)
    config: dict = field(default_factory=dict)
    contradiction: bool = False

    def finalize(self):
        self.entries.sort(key=BoundEntry.sort_key)
        if self.gcm_verified and any(e.verdict == FAIL for e in self.entries):
            # a failing bound on a verified gCM ring is an engine bug
            self.contradiction = True
        return self

    def counts(self) -> dict:
        out = {PASS: 0, FAIL: 0, SKIP: 0, ERROR: 0}
        for e in self.entries:
            out[e.verdict] += 1
        return out

    def as_dict(self) -> dict:
        return {
            "schema_version": 1,
            "ring": self.ring_id,
            "d": self.d,
            "ia": self.ia.as_dict(),
            "gcm_verified": self.gcm_verified,
            "colon_test": self.colon.as_dict() if self.colon else None,
            "entries": [e.as_dict() for e in self.entries],
            "summary": self.counts(),
            "contradiction": self.contradiction,
            "config": self.config,
        }
