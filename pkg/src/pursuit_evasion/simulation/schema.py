from __future__ import annotations

import bisect
import math
from dataclasses import dataclass, field
from enum import Enum
from typing import List, Optional, Tuple, Union

import numpy as np
import pandas as pd

from pursuit_evasion.exceptions import ConfigError
from pursuit_evasion.game.schema import RelState


class SimEventKind(str, Enum):
    CONTACT = "CONTACT"
    RIDE_START = "RIDE_START"
    RIDE_EXIT = "RIDE_EXIT"
    CAPTURE = "CAPTURE"
    HORIZON = "HORIZON"


@dataclass(order=True)
class SimEvent:
    time: float
    kind: SimEventKind = field(compare=False)
    theta: Optional[float] = field(default=None, compare=False)


@dataclass(frozen=True)
class ConstantHeading:
    psi: float

    def heading_at(self, t: float) -> float:
        return self.psi

    def next_switch(self, t: float) -> float:
        return math.inf


@dataclass(frozen=True)
class HeadingSchedule:
    """Piecewise-constant headings; headings[i] holds until switch_times[i]."""

    switch_times: Tuple[float, ...]
    headings: Tuple[float, ...]

    def __post_init__(self) -> None:
        if len(self.headings) != len(self.switch_times) + 1:
            raise ConfigError("a schedule needs one more heading than switch times")
        if any(b <= a for a, b in zip(self.switch_times, self.switch_times[1:])):
            raise ConfigError("switch times must be strictly increasing")

    def heading_at(self, t: float) -> float:
        return self.headings[bisect.bisect_right(self.switch_times, t)]

    def next_switch(self, t: float) -> float:
        index = bisect.bisect_right(self.switch_times, t)
        return self.switch_times[index] if index < len(self.switch_times) else math.inf


@dataclass(frozen=True)
class ThreePhasePolicy:
    """Straight entry for a fixed time, ride to theta_exit, leave tangentially."""

    entry_heading: float
    entry_duration: float
    theta_exit: float

    def __post_init__(self) -> None:
        if self.entry_duration < 0:
            raise ConfigError("entry duration must be nonnegative")


Policy = Union[ConstantHeading, HeadingSchedule, ThreePhasePolicy]


@dataclass(frozen=True)
class SimConfig:
    policy: Policy
    dt: float = 1e-4
    ride_on_contact: bool = True

    def __post_init__(self) -> None:
        if not (math.isfinite(self.dt) and self.dt > 0):
            raise ConfigError(f"time step must be positive, got {self.dt}")


@dataclass
class SimResult:
    times: np.ndarray
    positions: np.ndarray
    min_distance: float
    first_capture_time: Optional[float]
    final_distance: float
    events: List[SimEvent] = field(default_factory=list)

    @property
    def samples(self) -> List[Tuple[float, RelState]]:
        return [
            (float(t), RelState(float(p[0]), float(p[1])))
            for t, p in zip(self.times, self.positions)
        ]

    @property
    def captured(self) -> bool:
        return self.first_capture_time is not None

    @property
    def final_state(self) -> RelState:
        return RelState(float(self.positions[-1, 0]), float(self.positions[-1, 1]))

    def to_frame(self) -> pd.DataFrame:
        return pd.DataFrame(
            {
                "t": self.times,
                "x": self.positions[:, 0],
                "y": self.positions[:, 1],
                "dist": np.hypot(self.positions[:, 0], self.positions[:, 1]),
            }
        )
