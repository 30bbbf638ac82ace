"""Sweep specifications and reports shared by the search harnesses."""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from typing import Callable, Optional

from .core import InstanceError

VERIFIED_RANGE = "verified-range"
COUNTEREXAMPLE = "counterexample"
CAP_EXHAUSTED = "cap-exhausted"


@dataclass(frozen=True)
class SweepSpec:
    """What to sweep: a conjecture tag, size parameters, mode and caps."""

    conjecture: str
    params: tuple[tuple[str, int], ...] = ()
    mode: str = "exhaustive"
    seed: int = 0
    instance_cap: int = 10**6
    time_cap: Optional[float] = None

    def __post_init__(self):
        if self.instance_cap <= 0:
            raise InstanceError("instance cap must be positive")
        if self.time_cap is not None and self.time_cap <= 0:
            raise InstanceError("time cap must be positive")
        object.__setattr__(
            self, "params", tuple((str(k), int(v)) for k, v in self.params)
        )

    def param(self, name: str, default: Optional[int] = None) -> int:
        for k, v in self.params:
            if k == name:
                return v
        if default is None:
            raise InstanceError(f"sweep parameter {name!r} is required")
        return default


@dataclass
class SweepReport:
    """Outcome of a sweep: how far it got and what it found."""

    conjecture: str
    verdict: str
    instances_tested: int
    seed: int
    counterexample: Optional[dict] = None
    detail: dict = field(default_factory=dict)

    def as_dict(self) -> dict:
        out = {
            "conjecture": self.conjecture,
            "verdict": self.verdict,
            "instances_tested": self.instances_tested,
            "seed": self.seed,
        }
        if self.counterexample is not None:
            out["counterexample"] = self.counterexample
        if self.detail:
            out["detail"] = self.detail
        return out


class SweepRun:
    """Bookkeeping for one sweep: instance counting, caps, record emission."""

    def __init__(self, spec: SweepSpec,
                 on_record: Optional[Callable[[dict], None]] = None):
        self.spec = spec
        self.tested = 0
        self._started = time.monotonic()
        self._on_record = on_record

    def over_cap(self) -> bool:
        if self.tested >= self.spec.instance_cap:
            return True
        if (self.spec.time_cap is not None
                and time.monotonic() - self._started > self.spec.time_cap):
            return True
        return False

    def record(self, verdict: str, witness: Optional[dict] = None):
        index = self.tested
        self.tested += 1
        if self._on_record is not None:
            rec = {"instance": index, "verdict": verdict}
            if witness is not None:
                rec["witness"] = witness
            self._on_record(rec)

    def verified(self, **detail) -> SweepReport:
        return SweepReport(
            self.spec.conjecture, VERIFIED_RANGE, self.tested, self.spec.seed,
            detail=dict(detail),
        )

    def counterexample(self, instance: dict, **detail) -> SweepReport:
        return SweepReport(
            self.spec.conjecture, COUNTEREXAMPLE, self.tested, self.spec.seed,
            counterexample=instance, detail=dict(detail),
        )

    def capped(self, **detail) -> SweepReport:
        return SweepReport(
            self.spec.conjecture, CAP_EXHAUSTED, self.tested, self.spec.seed,
            detail=dict(detail),
        )
