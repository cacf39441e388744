"""Engine configuration: caps, stabilization windows, seeds.

All caps are hard limits; hitting one raises CapExceededError rather than
returning a guess. The config travels with each LocalRing so every derived
computation sees the same limits, and it is snapshotted into reports.
"""

from __future__ import annotations

import dataclasses
from dataclasses import dataclass


@dataclass(frozen=True)
class EngineConfig:
    characteristic: int = 101
    cap_trunc: int = 1024        # m-adic truncation exponent for local lengths
    cap_fit: int = 40            # Hilbert-Samuel sampling horizon
    cap_saturate: int = 64       # colon iterations in saturation
    cap_dimension: int = 48      # samples for dimension extraction
    cap_torsion: int = 24        # colon-exponent loop in graded torsion
    cap_colon: int = 64          # exponent loop in the gCM colon test
    window: int = 3              # stabilization window for traces and fits
    ia_nmax: int = 8             # default power horizon for the I(A) trace
    divergence_factor: int = 10  # threshold = factor * (first trace value + 1)
    horizon_slack: int = 3       # slack added to theorem-backed horizons
    horizon_override: int | None = None
    fr_retries: int = 8          # filter-regular random retries
    seed: int = 0
    suite_n_max: int = 5         # bound-check grid
    suite_m_max: int = 2
    sample_count: int = 5        # sampled parameter ideals per suite

    def replace(self, **kw) -> "EngineConfig":
        return dataclasses.replace(self, **kw)

    def as_dict(self) -> dict:
        return dataclasses.asdict(self)


DEFAULT_CONFIG = EngineConfig()
