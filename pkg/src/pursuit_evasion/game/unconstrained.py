from __future__ import annotations

import math
from typing import Optional, Tuple

from pursuit_evasion.config import DEFAULT_SOLVER, SolverSettings
from pursuit_evasion.exceptions import DomainError
from pursuit_evasion.game.capture import capture_guaranteed
from pursuit_evasion.game.kinematics import (
    propagate_straight,
    rel_velocity_of_heading,
    wrap_angle,
)
from pursuit_evasion.game.schema import (
    CIRCLE_SLACK,
    GameSpec,
    RegimeClass,
    RegimeTag,
    RelState,
    StraightSegment,
    TrajectorySolution,
)
from pursuit_evasion.logging_config import get_logger

logger = get_logger(__name__)


def optimal_heading(t: float, state: RelState, T: float) -> float:
    """Heading toward the virtual point, the state drifted back by the remaining time."""
    if t > T:
        raise DomainError(f"time {t} lies beyond the horizon {T}")
    return math.atan2(state.y, state.x - (T - t))


def initial_heading(
    spec: GameSpec, settings: SolverSettings = DEFAULT_SOLVER
) -> Tuple[float, bool]:
    """Optimal heading at t = 0 and whether it is one of a continuum of optima.

    When the virtual point sits on the origin every heading in a range is
    optimal; acos(mu) is returned as the representative.
    """
    virtual_x = spec.x0.x - spec.T
    if abs(virtual_x) <= settings.degenerate_tol and spec.x0.y <= settings.degenerate_tol:
        return math.acos(spec.mu), True
    return optimal_heading(0.0, spec.x0, spec.T), False


def collision_time(
    x0: RelState,
    psi: float,
    mu: float,
    settings: SolverSettings = DEFAULT_SOLVER,
) -> Optional[float]:
    """First time the ray from x0 with heading psi reaches the circle, if ever.

    Grazing rays do not count as collisions.
    """
    r = x0.norm
    if r < 1.0 - CIRCLE_SLACK:
        raise DomainError(f"state lies inside the proximity circle, |x0| = {r}")

    rel = rel_velocity_of_heading(psi, mu)
    half_width = math.asin(min(1.0, 1.0 / r))
    offset = wrap_angle(rel.phi - (math.pi + x0.angle))
    if abs(offset) >= half_width:
        return None

    ux, uy = math.cos(rel.phi), math.sin(rel.phi)
    b = x0.x * ux + x0.y * uy
    cross = x0.x * uy - x0.y * ux
    disc = 1.0 - cross * cross
    if disc < settings.radicand_clamp:
        disc = max(disc, 0.0)
    distance = max(-b - math.sqrt(disc), 0.0)
    return distance / rel.v


def intersects_proximity_circle(
    x0: RelState,
    psi: float,
    mu: float,
    T: float,
    settings: SolverSettings = DEFAULT_SOLVER,
) -> Optional[float]:
    """Collision time of the heading-psi ray when it hits the circle strictly before T."""
    t_c = collision_time(x0, psi, mu, settings)
    if t_c is None or T <= t_c:
        return None
    return t_c


def solve_unconstrained(
    spec: GameSpec, settings: SolverSettings = DEFAULT_SOLVER
) -> Optional[TrajectorySolution]:
    if capture_guaranteed(spec):
        raise DomainError("capture is guaranteed; no escape trajectory exists")

    psi, nonunique = initial_heading(spec, settings)
    t_c = intersects_proximity_circle(spec.x0, psi, spec.mu, spec.T, settings)
    if t_c is not None:
        logger.debug(
            "Straight heading %.6f meets the circle at t=%.6f < T=%.6f",
            psi,
            t_c,
            spec.T,
        )
        return None

    end = propagate_straight(spec.x0, psi, spec.mu, spec.T)
    segment = StraightSegment(start=spec.x0, psi=psi, duration=spec.T, end=end)
    return TrajectorySolution(
        regime=RegimeClass(RegimeTag.UNCONSTRAINED_ESCAPE),
        phases=(segment,),
        final_state=end,
        final_distance=end.norm,
        nonunique_flag=nonunique,
    )
