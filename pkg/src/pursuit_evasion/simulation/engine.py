"""Forward time-stepping of the relative dynamics with constraint riding.

Straight motion is advanced in closed form, so contact with the proximity
circle is located exactly. While riding, the polar angle follows
theta' = sqrt(mu^2 - cos^2 theta) + sin theta, advanced with fixed-step RK4.
"""

from __future__ import annotations

import math
from typing import Callable, List, Optional, Tuple

import numpy as np

from pursuit_evasion.config import DEFAULT_SOLVER
from pursuit_evasion.game.kinematics import radial_rate
from pursuit_evasion.game.schema import RelState, SpeedRatio
from pursuit_evasion.logging_config import get_logger
from pursuit_evasion.simulation.schema import (
    SimConfig,
    SimEvent,
    SimEventKind,
    SimResult,
    ThreePhasePolicy,
)

logger = get_logger(__name__)

_TIME_EPS = 1e-13


def rk4_step(f: Callable[[float], float], y: float, h: float) -> float:
    k1 = f(y)
    k2 = f(y + 0.5 * h * k1)
    k3 = f(y + 0.5 * h * k2)
    k4 = f(y + h * k3)
    return y + h / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4)


def ride_derivative(mu: float, direction: float = 1.0) -> Callable[[float], float]:
    """Angular rate on the circle; direction -1 mirrors the ride below the x-axis."""

    def rate(theta: float) -> float:
        cos_t = math.cos(theta)
        w = math.sqrt(max(mu * mu - cos_t * cos_t, 0.0))
        return direction * (w + abs(math.sin(theta)))

    return rate


def ride_time(theta_start: float, theta_stop: float, mu: float, dt: float) -> float:
    """Time to ride from theta_start up to theta_stop by RK4 stepping."""
    rate = ride_derivative(SpeedRatio(mu))
    theta, t = theta_start, 0.0
    while theta < theta_stop:
        nxt = rk4_step(rate, theta, dt)
        if nxt >= theta_stop:
            return t + dt * (theta_stop - theta) / (nxt - theta)
        theta, t = nxt, t + dt
    return t


def ride_table(
    theta_start: float, theta_stop: float, mu: float, duration: float, dt: float
) -> Tuple[np.ndarray, np.ndarray]:
    """Ride times and angles from theta_start until theta_stop or duration."""
    rate = ride_derivative(SpeedRatio(mu))
    times: List[float] = [0.0]
    angles: List[float] = [theta_start]
    theta, t = theta_start, 0.0
    while t < duration and theta < theta_stop:
        h = min(dt, duration - t)
        theta = rk4_step(rate, theta, h)
        t += h
        times.append(t)
        angles.append(theta)
    return np.asarray(times), np.asarray(angles)


def contact_offset(
    position: np.ndarray, velocity: np.ndarray, horizon: float
) -> Optional[float]:
    """Time within horizon at which straight motion first reaches the circle."""
    b = float(position @ velocity)
    # tangential motion off the circle is not an approach
    if b >= -_TIME_EPS:
        return None
    c = float(position @ position) - 1.0
    if c <= 0:
        return 0.0
    a = float(velocity @ velocity)
    disc = b * b - a * c
    if disc <= 0:
        return None
    offset = c / (-b + math.sqrt(disc))
    return offset if offset <= horizon else None


class SimulationEngine:
    def __init__(self, x0: RelState, mu: float, config: SimConfig):
        self.mu = SpeedRatio(mu)
        self.config = config
        self.theta_min = math.acos(self.mu)
        self.current_time = 0.0
        self.position = np.array([x0.x, x0.y], dtype=float)
        self.riding = False
        self.theta = 0.0
        self.ride_direction = 1.0
        self.exited_ride = False
        self.first_capture_time: Optional[float] = None
        self.processed_events: List[SimEvent] = []

        self._times: List[float] = [0.0]
        self._positions: List[Tuple[float, float]] = [(x0.x, x0.y)]

    @property
    def captured(self) -> bool:
        return self.first_capture_time is not None

    def run(self, horizon: float) -> SimResult:
        while not self.captured and horizon - self.current_time > _TIME_EPS:
            self.step(horizon)

        if not self.captured:
            self.current_time = horizon
            self._times[-1] = horizon
            self.record_event(SimEventKind.HORIZON)

        positions = np.asarray(self._positions)
        norms = np.hypot(positions[:, 0], positions[:, 1])
        logger.debug(
            "Simulation finished at t=%.6f after %d samples", self.current_time, len(norms)
        )
        return SimResult(
            times=np.asarray(self._times),
            positions=positions,
            min_distance=float(norms.min()),
            first_capture_time=self.first_capture_time,
            final_distance=float(norms[-1]),
            events=sorted(self.processed_events),
        )

    def step(self, horizon: float) -> None:
        h = min(self.config.dt, horizon - self.current_time)
        if self.riding:
            self.ride_step(h)
        else:
            self.straight_step(h)

    def record_event(self, kind: SimEventKind, theta: Optional[float] = None) -> None:
        event = SimEvent(time=self.current_time, kind=kind, theta=theta)
        self.processed_events.append(event)

    def _record_sample(self) -> None:
        self._times.append(self.current_time)
        self._positions.append((float(self.position[0]), float(self.position[1])))

    def _velocity(self, psi: float) -> np.ndarray:
        return np.array([self.mu * math.cos(psi) - 1.0, self.mu * math.sin(psi)])

    def _straight_heading(self, h: float) -> Tuple[float, float]:
        """Heading for the next straight piece and the time it may last."""
        policy = self.config.policy
        if isinstance(policy, ThreePhasePolicy):
            if self.exited_ride:
                return self._tangential_exit_heading(), h
            return policy.entry_heading, min(h, policy.entry_duration - self.current_time)
        until_switch = policy.next_switch(self.current_time) - self.current_time
        return policy.heading_at(self.current_time), min(h, until_switch)

    def _tangential_exit_heading(self) -> float:
        phi = self.theta + math.pi / 2
        ratio = max(-1.0, min(1.0, math.sin(phi) / self.mu))
        return phi - math.asin(ratio)

    def straight_step(self, h: float) -> None:
        psi, h = self._straight_heading(h)
        velocity = self._velocity(psi)
        offset = contact_offset(self.position, velocity, h)

        if offset is not None:
            self.position = self.position + offset * velocity
            self.current_time += offset
            self._record_sample()
            self.handle_contact()
            return

        self.position = self.position + h * velocity
        self.current_time += h
        self._record_sample()

        policy = self.config.policy
        if (
            isinstance(policy, ThreePhasePolicy)
            and not self.exited_ride
            and self.current_time >= policy.entry_duration - _TIME_EPS
        ):
            self.handle_contact()

    def handle_contact(self) -> None:
        theta = math.atan2(self.position[1], self.position[0])
        self.record_event(SimEventKind.CONTACT, theta)
        tol = DEFAULT_SOLVER.contact_tol
        survivable = self.theta_min - tol <= abs(theta) <= math.pi / 2 + tol
        if self.config.ride_on_contact and survivable:
            self.riding = True
            self.theta = theta
            self.ride_direction = 1.0 if theta >= 0 else -1.0
            self.position = np.array([math.cos(theta), math.sin(theta)])
            self.record_event(SimEventKind.RIDE_START, theta)
            self._maybe_exit_ride()
            return

        self.first_capture_time = self.current_time
        self.record_event(SimEventKind.CAPTURE, theta)
        logger.debug("Capture at t=%.9f, theta=%.6f", self.current_time, theta)

    def ride_step(self, h: float) -> None:
        rate = ride_derivative(self.mu, self.ride_direction)
        policy = self.config.policy
        theta_new = rk4_step(rate, self.theta, h)

        if isinstance(policy, ThreePhasePolicy) and theta_new >= policy.theta_exit:
            fraction = (policy.theta_exit - self.theta) / (theta_new - self.theta)
            self.current_time += fraction * h
            self._set_angle(policy.theta_exit)
            self._exit_ride()
            return

        self.current_time += h
        self._set_angle(theta_new)
        self._maybe_exit_ride()

    def _set_angle(self, theta: float) -> None:
        self.theta = theta
        self.position = np.array([math.cos(theta), math.sin(theta)])
        self._record_sample()

    def _maybe_exit_ride(self) -> None:
        policy = self.config.policy
        if isinstance(policy, ThreePhasePolicy):
            if self.theta >= policy.theta_exit:
                self._exit_ride()
            return
        state = RelState(float(self.position[0]), float(self.position[1]))
        if radial_rate(state, policy.heading_at(self.current_time), self.mu) >= 0:
            self._exit_ride()

    def _exit_ride(self) -> None:
        self.riding = False
        self.exited_ride = True
        self.record_event(SimEventKind.RIDE_EXIT, self.theta)


def simulate(x0: RelState, config: SimConfig, mu: float, T: float) -> SimResult:
    """Simulate one policy from x0 over the horizon T."""
    engine = SimulationEngine(x0, mu, config)
    return engine.run(T)
