from __future__ import annotations

import math
from dataclasses import dataclass, field
from enum import Enum
from typing import NamedTuple, Optional, Tuple, Union

from pursuit_evasion.exceptions import DomainError

# States closer than this to the unit circle count as lying on it.
CIRCLE_SLACK = 1e-9


class SpeedRatio(float):
    """Evader speed over pursuer speed, strictly between 0 and 1."""

    def __new__(cls, value: float) -> "SpeedRatio":
        value = float(value)
        if not (0.0 < value < 1.0):
            raise DomainError(f"speed ratio must satisfy 0 < mu < 1, got {value}")
        return super().__new__(cls, value)


@dataclass(frozen=True)
class RelState:
    """Evader position in the pursuer-fixed frame, in capture-radius units."""

    x: float
    y: float

    def __post_init__(self) -> None:
        if not (math.isfinite(self.x) and math.isfinite(self.y)):
            raise DomainError(f"state must be finite, got ({self.x}, {self.y})")

    @property
    def norm(self) -> float:
        return math.hypot(self.x, self.y)

    @property
    def angle(self) -> float:
        return math.atan2(self.y, self.x)

    @property
    def on_circle(self) -> bool:
        return abs(self.norm - 1.0) <= CIRCLE_SLACK

    def as_tuple(self) -> Tuple[float, float]:
        return (self.x, self.y)

    def distance_to(self, other: "RelState") -> float:
        return math.hypot(self.x - other.x, self.y - other.y)


class RelVelocity(NamedTuple):
    phi: float
    v: float


class InertialHeading(NamedTuple):
    psi: float
    v: float


class HeadingPair(NamedTuple):
    fast: InertialHeading
    slow: InertialHeading


class RegimeTag(str, Enum):
    GUARANTEED_CAPTURE = "capture"
    UNCONSTRAINED_ESCAPE = "unconstrained"
    CONSTRAINED_ESCAPE = "constrained"


@dataclass(frozen=True)
class GameSpec:
    """A full problem instance: start, speed ratio and horizon."""

    x0: RelState
    mu: float
    T: float

    def __post_init__(self) -> None:
        object.__setattr__(self, "mu", SpeedRatio(self.mu))
        if not (math.isfinite(self.T) and self.T >= 0):
            raise DomainError(f"horizon must be finite and nonnegative, got {self.T}")
        if self.x0.norm < 1.0 - CIRCLE_SLACK:
            raise DomainError(
                f"evader must start outside the proximity circle, |x0| = {self.x0.norm}"
            )
        if self.x0.y < 0:
            raise DomainError("library operations expect y >= 0; reflect the state first")


@dataclass(frozen=True)
class RegimeClass:
    tag: RegimeTag
    survival_time: Optional[float] = None

    def __post_init__(self) -> None:
        is_capture = self.tag is RegimeTag.GUARANTEED_CAPTURE
        if is_capture != (self.survival_time is not None):
            raise DomainError("survival_time is present exactly for guaranteed capture")
        if self.survival_time is not None and self.survival_time < 0:
            raise DomainError(f"negative survival time {self.survival_time}")


@dataclass(frozen=True)
class StraightSegment:
    start: RelState
    psi: float
    duration: float
    end: RelState


@dataclass(frozen=True)
class ConstraintArc:
    theta_start: float
    theta_end: float
    duration: float

    @property
    def start(self) -> RelState:
        return RelState(math.cos(self.theta_start), math.sin(self.theta_start))

    @property
    def end(self) -> RelState:
        return RelState(math.cos(self.theta_end), math.sin(self.theta_end))


Phase = Union[StraightSegment, ConstraintArc]


class TangentEntry(NamedTuple):
    phi_tan: float
    psi_tan: float
    t_tan: float
    theta_tan: float


@dataclass(frozen=True)
class TrajectorySolution:
    regime: RegimeClass
    phases: Tuple[Phase, ...]
    final_state: RelState
    final_distance: float
    capture_time: Optional[float] = None
    nonunique_flag: bool = False
    entry: Optional[TangentEntry] = None
    theta_exit: Optional[float] = None
    remaining_time: Optional[float] = None
    switch_times: Tuple[float, ...] = field(init=False)

    def __post_init__(self) -> None:
        times = []
        elapsed = 0.0
        for phase in self.phases[:-1]:
            elapsed += phase.duration
            times.append(elapsed)
        object.__setattr__(self, "switch_times", tuple(times))

    @property
    def total_duration(self) -> float:
        return sum(phase.duration for phase in self.phases)

    @property
    def headings(self) -> Tuple[float, ...]:
        return tuple(p.psi for p in self.phases if isinstance(p, StraightSegment))


@dataclass(frozen=True)
class PolicyPair:
    psi_ne: float
    t_ne: float
    value: float
