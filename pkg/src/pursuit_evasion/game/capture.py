from __future__ import annotations

import math

from pursuit_evasion.exceptions import DomainError
from pursuit_evasion.game.kinematics import wrap_angle
from pursuit_evasion.game.schema import (
    GameSpec,
    RegimeClass,
    RegimeTag,
    RelState,
    SpeedRatio,
)
from pursuit_evasion.logging_config import get_logger

logger = get_logger(__name__)


def escape_margin(x0: RelState, mu: float) -> float:
    """Closest approach reached when holding heading acos(mu) forever."""
    mu = SpeedRatio(mu)
    return mu * x0.x + math.sqrt(1.0 - mu * mu) * x0.y


def in_no_escape_zone(x0: RelState, mu: float) -> bool:
    mu = SpeedRatio(mu)
    return escape_margin(x0, mu) < 1.0 and x0.x > mu


def survival_time(x0: RelState, mu: float) -> float:
    """Longest time an evader in the no-escape zone can stay uncaptured.

    Smaller root of (1 - mu^2) t^2 - 2 (x0 - mu) t + |x0|^2 - 1, written in
    conjugate form to avoid cancellation.
    """
    mu = SpeedRatio(mu)
    if not in_no_escape_zone(x0, mu):
        raise DomainError(f"({x0.x}, {x0.y}) is not in the no-escape zone at mu={mu}")

    c = max(x0.x * x0.x + x0.y * x0.y - 1.0, 0.0)
    b = x0.x - mu
    disc = (1.0 - mu * x0.x) ** 2 - (1.0 - mu * mu) * x0.y * x0.y
    return c / (b + math.sqrt(max(disc, 0.0)))


def survival_heading(x0: RelState, mu: float) -> float:
    """Constant heading whose trajectory first touches the circle at the survival time."""
    mu = SpeedRatio(mu)
    t_s = survival_time(x0, mu)
    if t_s <= 0:
        raise DomainError("survival heading is undefined when the survival time is zero")

    denom = 1.0 - mu * t_s
    cos_psi = (x0.x - t_s) / denom
    sin_psi = x0.y / denom
    norm = math.hypot(cos_psi, sin_psi)
    if abs(norm - 1.0) > 1e-10:
        logger.warning("Survival heading components have norm %.12g", norm)
    return math.atan2(sin_psi, cos_psi)


def reachable_bound(t: float, x0: RelState, mu: float) -> float:
    """Farthest distance from the pursuer reachable at time t."""
    mu = SpeedRatio(mu)
    return math.hypot(x0.x - t, x0.y) + mu * t


def capture_guaranteed(spec: GameSpec) -> bool:
    if not in_no_escape_zone(spec.x0, spec.mu):
        return False
    return spec.T > survival_time(spec.x0, spec.mu)


def in_capture_region(x0: RelState, mu: float, T: float) -> bool:
    """Membership of x0 in the set of starts captured within horizon T."""
    if not in_no_escape_zone(x0, mu):
        return False
    return T > survival_time(x0, mu)


def circle_point_capturable(theta: float, mu: float) -> bool:
    mu = SpeedRatio(mu)
    return abs(wrap_angle(theta)) < math.acos(mu)


def classify(spec: GameSpec) -> RegimeClass:
    """Regime of an instance: capture, or escape with or without the constraint."""
    from pursuit_evasion.game.unconstrained import (
        initial_heading,
        intersects_proximity_circle,
    )

    if capture_guaranteed(spec):
        return RegimeClass(
            RegimeTag.GUARANTEED_CAPTURE, survival_time(spec.x0, spec.mu)
        )

    psi, _ = initial_heading(spec)
    if intersects_proximity_circle(spec.x0, psi, spec.mu, spec.T) is not None:
        return RegimeClass(RegimeTag.CONSTRAINED_ESCAPE)
    return RegimeClass(RegimeTag.UNCONSTRAINED_ESCAPE)
