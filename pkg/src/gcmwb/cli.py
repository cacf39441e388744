"""Command dispatch and the gcmwb executable.

Exit codes: 0 when every check passes (a "not gCM" verdict from gcm-test
is a successful verdict), 1 on any failed bound or contradiction, 2 on
engine errors such as exceeded caps. Flags override GCMWB_* environment
variables; job-file `with` options override both.
"""

from __future__ import annotations

import argparse
import json
import os
import random
import sys

from .config import DEFAULT_CONFIG, EngineConfig
from .dsl import JobSpec, parse_job
from .errors import CapExceededError, DslError, EngineError
from .graded import postulation, regularity_g
from .harness import (emit_report, run_suite, sample_parameter_systems,
                      theorem28_experiment)
from .invariants import invariant_ia, invariant_iq
from .localring import make_local_ring, validate_parameter_system
from .rees import rees_presentation
from .reports import FAIL, STABILIZED

EXIT_OK = 0
EXIT_FAIL = 1
EXIT_ERROR = 2


def build_config(args, options: dict) -> EngineConfig:
    def pick(flag_value, env_name, job_value=None, default=None):
        if job_value is not None:
            return job_value
        if flag_value is not None:
            return flag_value
        env = os.environ.get(env_name)
        if env is not None:
            return int(env)
        return default

    cfg = DEFAULT_CONFIG
    updates = {}
    seed = pick(args.seed, "GCMWB_SEED", options.get("seed"), cfg.seed)
    updates["seed"] = seed
    cap_trunc = pick(args.cap_trunc, "GCMWB_CAP_TRUNC", None, cfg.cap_trunc)
    updates["cap_trunc"] = cap_trunc
    cap_fit = pick(args.cap_fit, "GCMWB_CAP_FIT", options.get("n"),
                   cfg.cap_fit)
    updates["cap_fit"] = cap_fit
    horizon = pick(args.horizon, "GCMWB_HORIZON", None, cfg.horizon_override)
    updates["horizon_override"] = horizon
    if "n" in options:
        updates["suite_n_max"] = options["n"]
    if "m" in options:
        updates["suite_m_max"] = options["m"]
    return cfg.replace(**updates)


def dispatch(spec: JobSpec, config: EngineConfig,
             fmt: str = "text") -> tuple[int, str]:
    """Run the requested pipeline; returns (exit code, emitted document)."""
    try:
        return _dispatch_inner(spec, config, fmt)
    except CapExceededError as ex:
        return EXIT_ERROR, _error_doc(fmt, "cap", str(ex))
    except EngineError as ex:
        return EXIT_ERROR, _error_doc(fmt, "engine", str(ex))


def _error_doc(fmt: str, kind: str, message: str) -> str:
    if fmt == "json":
        return json.dumps({"schema_version": 1, "error": kind,
                           "message": message}, sort_keys=True, indent=2) + "\n"
    return f"gcmwb error ({kind}): {message}\n"


def _dispatch_inner(spec: JobSpec, config: EngineConfig, fmt: str):
    if spec.command is None:
        raise EngineError("job has no run statement")
    A = make_local_ring(spec.presentation, config)
    named = {name: validate_parameter_system(A, elems)
             for name, elems in spec.params.items()}
    if not named:
        raise EngineError(f"command {spec.command!r} needs a params block")
    systems = list(named.values())
    base = systems[0]
    rng = random.Random(config.seed)
    ring_id = spec.ring_name

    if spec.command == "suite":
        count = max(config.sample_count, len(systems))
        Qs = systems + [q for q in sample_parameter_systems(A, base, count, rng)
                        if q.key() not in {s.key() for s in systems}]
        Qs = Qs[:count]
        rep = run_suite(A, Qs, ring_id=ring_id)
        doc = emit_report(rep, fmt)
        code = EXIT_FAIL if (rep.contradiction or
                             any(e.verdict == FAIL for e in rep.entries)) \
            else EXIT_OK
        return code, doc

    if spec.command == "gcm-test":
        budget = spec.options.get("n", config.sample_count)
        family = sample_parameter_systems(A, base, budget, rng)
        rep = theorem28_experiment(A, family, budget, ring_id=ring_id)
        return EXIT_OK, emit_report(rep, fmt)

    if spec.command == "invariants":
        payload = {"schema_version": 1, "ring": ring_id, "d": A.dim,
                   "systems": []}
        for name, Q in named.items():
            rec = invariant_iq(A, Q, ring_id=ring_id)
            ia = invariant_ia(A, Q)
            payload["systems"].append({"name": name, **rec.as_dict(),
                                       "ia": ia.as_dict()})
        return EXIT_OK, _payload_doc(fmt, payload, _invariants_text)

    if spec.command == "graded":
        payload = {"schema_version": 1, "ring": ring_id, "d": A.dim,
                   "systems": []}
        for name, Q in named.items():
            ia = invariant_ia(A, Q)
            if ia.status != STABILIZED and config.horizon_override is None:
                raise EngineError(
                    f"ring invariant {ia.status} for {Q}; graded data needs "
                    "a certified horizon or --horizon")
            fit = postulation(A, Q, ia)
            cert = regularity_g(A, Q, ia, seed=config.seed)
            payload["systems"].append({"name": name, "Q": str(Q),
                                       "ia": ia.as_dict(),
                                       "postulation": fit.as_dict(),
                                       "regularity": cert.as_dict()})
        return EXIT_OK, _payload_doc(fmt, payload, _graded_text)

    if spec.command == "rees":
        payload = {"schema_version": 1, "ring": ring_id, "systems": []}
        for name, Q in named.items():
            rp = rees_presentation(A, Q)
            payload["systems"].append({"name": name, **rp.as_dict()})
        return EXIT_OK, _payload_doc(fmt, payload, _rees_text)

    raise EngineError(f"unknown command {spec.command!r}")


def _payload_doc(fmt: str, payload: dict, to_text) -> str:
    if fmt == "json":
        return json.dumps(payload, sort_keys=True, indent=2) + "\n"
    if fmt == "csv":
        return json.dumps(payload, sort_keys=True) + "\n"
    return to_text(payload)


def _invariants_text(payload: dict) -> str:
    lines = [f"gcmwb invariants (schema 1)",
             f"ring: {payload['ring']}   d = {payload['d']}"]
    for s in payload["systems"]:
        lines.append(f"{s['name']} = {s['Q']}: colength={s['colength']} "
                     f"e={s['multiplicity']} I(Q,A)={s['iq']}")
        ia = s["ia"]
        lines.append(f"  I(A): value={ia['value']} status={ia['status']} "
                     f"trace={ia['trace']}")
        lines.append(f"  scope: {ia['scope']}")
    return "\n".join(lines) + "\n"


def _graded_text(payload: dict) -> str:
    lines = [f"gcmwb graded data (schema 1)",
             f"ring: {payload['ring']}   d = {payload['d']}"]
    for s in payload["systems"]:
        lines.append(f"{s['name']} = {s['Q']}:")
        lines.append(f"  hilbert = {s['postulation']['values']}")
        lines.append(f"  postulation = {s['postulation']['postulation']}")
        lines.append(f"  reg = {s['regularity']['reg']} "
                     f"(stages {s['regularity']['stage_ends']})")
    return "\n".join(lines) + "\n"


def _rees_text(payload: dict) -> str:
    lines = [f"gcmwb rees presentations (schema 1)",
             f"ring: {payload['ring']}"]
    for s in payload["systems"]:
        lines.append(f"{s['name']} = {s['Q']}: reltype = {s['reltype']}")
        for g, t in zip(s["generators"], s["tdegrees"]):
            lines.append(f"  [T-degree {t}] {g}")
    return "\n".join(lines) + "\n"


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(
        prog="gcmwb",
        description="local-ring invariant workbench: uniform regularity, "
                    "relation-type and postulation bounds")
    parser.add_argument("--input", default=None,
                        help="job file (default: stdin)")
    parser.add_argument("--format", choices=("json", "csv", "text"),
                        default=None)
    parser.add_argument("--seed", type=int, default=None)
    parser.add_argument("--cap-trunc", type=int, default=None)
    parser.add_argument("--cap-fit", type=int, default=None)
    parser.add_argument("--horizon", type=int, default=None,
                        help="regularity horizon override")
    args = parser.parse_args(argv)

    fmt = args.format or os.environ.get("GCMWB_FORMAT") or "text"
    if fmt not in ("json", "csv", "text"):
        print(f"gcmwb error (cli): unknown format {fmt!r}", file=sys.stderr)
        return EXIT_ERROR

    source = args.input or os.environ.get("GCMWB_INPUT")
    try:
        if source and source != "-":
            with open(source, "r", encoding="utf-8") as fh:
                text = fh.read()
        else:
            text = sys.stdin.read()
    except OSError as ex:
        print(f"gcmwb error (io): {ex}", file=sys.stderr)
        return EXIT_ERROR

    try:
        spec = parse_job(text)
    except DslError as ex:
        print(f"gcmwb error (parse): {ex}", file=sys.stderr)
        return EXIT_ERROR

    config = build_config(args, spec.options)
    code, doc = dispatch(spec, config, fmt)
    print(doc, end="")
    return code


if __name__ == "__main__":
    sys.exit(main())
