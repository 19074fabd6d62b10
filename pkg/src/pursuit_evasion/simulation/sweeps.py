"""Brute-force policy sweeps that bound the optimal values from below.

Constant-heading families are evaluated for all headings at once with
numpy; straight motion is integrated exactly, so a run is captured iff its
closest approach to the pursuer falls inside the unit circle.
"""

from __future__ import annotations

import math
from typing import Tuple

import numpy as np

from pursuit_evasion.config import DEFAULT_ORACLE
from pursuit_evasion.exceptions import DomainError, NoFeasiblePolicy
from pursuit_evasion.game.kinematics import headings_of_rel_heading, tangent_rel_heading
from pursuit_evasion.game.schema import RelState, SpeedRatio
from pursuit_evasion.logging_config import get_logger
from pursuit_evasion.simulation.engine import ride_table

logger = get_logger(__name__)


def heading_grid(n: int) -> np.ndarray:
    """n evenly spaced headings in (-pi, pi]."""
    if n < 2:
        raise DomainError(f"a sweep needs at least two policies, got {n}")
    return -math.pi + 2.0 * math.pi * np.arange(1, n + 1) / n


def _velocities(psi: np.ndarray, mu: float) -> Tuple[np.ndarray, np.ndarray]:
    return mu * np.cos(psi) - 1.0, mu * np.sin(psi)


def first_contact_times(x0: RelState, psi: np.ndarray, mu: float) -> np.ndarray:
    """First time each constant heading reaches the circle; inf if never."""
    vx, vy = _velocities(psi, mu)
    a = vx * vx + vy * vy
    b = x0.x * vx + x0.y * vy
    c = x0.x * x0.x + x0.y * x0.y - 1.0
    disc = b * b - a * c
    approaching = (b < 0) & (disc > 0)
    root = np.sqrt(np.where(approaching, disc, 1.0))
    times = np.where(approaching, np.maximum(c, 0.0) / (-b + root), np.inf)
    return times


def sweep_constant_headings(
    x0: RelState, mu: float, T: float, n: int = DEFAULT_ORACLE.heading_count
) -> Tuple[float, float]:
    """Best feasible final distance over n constant headings held for T."""
    mu = SpeedRatio(mu)
    psi = heading_grid(n)
    contact = first_contact_times(x0, psi, mu)
    feasible = ~(contact < T)
    if not feasible.any():
        raise NoFeasiblePolicy(f"all {n} constant headings are captured before T={T}")

    vx, vy = _velocities(psi, mu)
    final = np.hypot(x0.x + T * vx, x0.y + T * vy)
    final = np.where(feasible, final, -np.inf)
    best = int(np.argmax(final))
    logger.debug("%d/%d headings feasible, best psi=%.6f", int(feasible.sum()), n, psi[best])
    return float(psi[best]), float(final[best])


def sweep_survival_headings(
    x0: RelState, mu: float, horizon: float, n: int = DEFAULT_ORACLE.heading_count
) -> Tuple[float, float]:
    """Heading with the latest first capture, capped at the horizon."""
    mu = SpeedRatio(mu)
    psi = heading_grid(n)
    contact = np.minimum(first_contact_times(x0, psi, mu), horizon)
    best = int(np.argmax(contact))
    return float(psi[best]), float(contact[best])


def sweep_exit_angles(
    x0: RelState,
    mu: float,
    T: float,
    n: int = DEFAULT_ORACLE.exit_count,
    dt: float = DEFAULT_ORACLE.ride_dt,
) -> Tuple[float, float]:
    """Best final distance over n exit angles of the enter-ride-exit family.

    Entry follows the fast heading toward the upper tangent point; the ride
    is integrated once and candidate exits are read off the ride table.
    """
    mu = SpeedRatio(mu)
    if n < 2:
        raise DomainError(f"a sweep needs at least two policies, got {n}")

    r = x0.norm
    fast = headings_of_rel_heading(tangent_rel_heading(x0), mu).fast
    t_entry = math.sqrt(max(r * r - 1.0, 0.0)) / fast.v
    if t_entry >= T:
        raise NoFeasiblePolicy(f"the tangent point is not reached before T={T}")

    landing_x = x0.x + t_entry * (mu * math.cos(fast.psi) - 1.0)
    landing_y = x0.y + t_entry * mu * math.sin(fast.psi)
    theta_start = max(math.atan2(landing_y, landing_x), math.acos(mu))
    budget = T - t_entry

    ride_times, ride_angles = ride_table(theta_start, math.pi / 2, mu, budget, dt)
    candidates = theta_start + (math.pi / 2 - theta_start) * np.arange(n) / n
    reachable = candidates <= ride_angles[-1]
    if not reachable.any():
        raise NoFeasiblePolicy("no exit angle is reachable within the horizon")

    elapsed = np.interp(candidates, ride_angles, ride_times)
    remaining = np.where(reachable, budget - elapsed, 0.0)
    radicand = np.maximum(mu * mu - np.cos(candidates) ** 2, 0.0)
    speed = np.sin(candidates) + np.sqrt(radicand)
    final = np.where(reachable, np.hypot(1.0, remaining * speed), -np.inf)

    best = int(np.argmax(final))
    logger.debug(
        "Exit sweep over %d angles, best theta=%.6f value=%.9f",
        int(reachable.sum()),
        candidates[best],
        final[best],
    )
    return float(candidates[best]), float(final[best])
