"""Heading conversions and straight-line motion in the pursuer-fixed frame.

The pursuer moves along +x at unit speed, so an evader with inertial heading
``psi`` and speed ``mu`` drifts with velocity ``(mu cos psi - 1, mu sin psi)``
relative to it. Angles are radians, wrapped to (-pi, pi].
"""

from __future__ import annotations

import math
from typing import Tuple

from pursuit_evasion.exceptions import DomainError
from pursuit_evasion.game.schema import (
    HeadingPair,
    InertialHeading,
    RelState,
    RelVelocity,
    SpeedRatio,
)

# Slack on the admissible effective-heading interval.
_BRANCH_SLACK = 1e-12


def wrap_angle(angle: float) -> float:
    """Normalise an angle to (-pi, pi]."""
    wrapped = math.remainder(angle, 2.0 * math.pi)
    if wrapped <= -math.pi:
        wrapped += 2.0 * math.pi
    return wrapped


def velocity_components(psi: float, mu: float) -> Tuple[float, float]:
    return (mu * math.cos(psi) - 1.0, mu * math.sin(psi))


def rel_velocity_of_heading(psi: float, mu: float) -> RelVelocity:
    """Effective heading and speed seen by the pursuer for inertial heading psi."""
    mu = SpeedRatio(mu)
    psi = wrap_angle(psi)
    vx, vy = velocity_components(psi, mu)
    phi = math.atan2(vy, vx)
    v = math.sqrt(1.0 + mu * mu - 2.0 * mu * math.cos(psi))
    return RelVelocity(phi=phi, v=v)


def headings_of_rel_heading(phi: float, mu: float) -> HeadingPair:
    """Both inertial headings that realise the effective heading phi.

    The fast branch has the larger relative speed. At the ends of the
    admissible interval the two branches coincide.
    """
    mu = SpeedRatio(mu)
    sin_phi = math.sin(phi)
    cos_phi = math.cos(phi)
    if abs(sin_phi) > mu + _BRANCH_SLACK or cos_phi > _BRANCH_SLACK:
        raise DomainError(
            f"no inertial heading realises phi={phi:.12g} at mu={mu:.12g}"
        )

    ratio = max(-1.0, min(1.0, sin_phi / mu))
    offset = math.asin(ratio)
    root = math.sqrt(max(mu * mu - sin_phi * sin_phi, 0.0))

    fast = InertialHeading(psi=wrap_angle(phi - offset), v=-cos_phi + root)
    slow = InertialHeading(psi=wrap_angle(phi + offset - math.pi), v=-cos_phi - root)
    return HeadingPair(fast=fast, slow=slow)


def propagate_straight(start: RelState, psi: float, mu: float, dt: float) -> RelState:
    """Closed-form position after holding heading psi for dt."""
    if dt < 0:
        raise DomainError(f"propagation time must be nonnegative, got {dt}")
    vx, vy = velocity_components(psi, mu)
    return RelState(start.x + dt * vx, start.y + dt * vy)


def radial_rate(state: RelState, psi: float, mu: float) -> float:
    """Rate of change of the distance to the pursuer."""
    vx, vy = velocity_components(psi, mu)
    return (state.x * vx + state.y * vy) / state.norm


def tangent_rel_heading(x0: RelState) -> float:
    """Effective heading of the ray from x0 tangent to the circle on the upper side."""
    r = x0.norm
    if r < 1.0:
        raise DomainError(f"no tangent from inside the proximity circle, |x0| = {r}")
    return wrap_angle(math.pi - math.asin(min(1.0, 1.0 / r)) + x0.angle)


def reflect_state(state: RelState) -> Tuple[RelState, bool]:
    """Return the y >= 0 representative of a state and whether it was mirrored."""
    if state.y < 0:
        return RelState(state.x, -state.y), True
    return state, False
