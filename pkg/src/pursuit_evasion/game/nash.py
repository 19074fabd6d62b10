from __future__ import annotations

import math

import numpy as np

from pursuit_evasion.exceptions import DomainError
from pursuit_evasion.game.capture import escape_margin, in_no_escape_zone
from pursuit_evasion.game.kinematics import propagate_straight
from pursuit_evasion.game.schema import PolicyPair, RelState, SpeedRatio
from pursuit_evasion.logging_config import get_logger

logger = get_logger(__name__)


def _require_escape(x0: RelState, mu: float) -> None:
    if in_no_escape_zone(x0, mu):
        raise DomainError(
            f"({x0.x}, {x0.y}) lies in the no-escape zone at mu={mu}; no equilibrium"
        )


def t_min(x0: RelState, mu: float) -> float:
    """Horizon that minimises the evader's optimal final distance."""
    mu = SpeedRatio(mu)
    _require_escape(x0, mu)
    return max(x0.x - mu / math.sqrt(1.0 - mu * mu) * x0.y, 0.0)


def equilibrium(x0: RelState, mu: float) -> PolicyPair:
    mu = SpeedRatio(mu)
    horizon = t_min(x0, mu)
    value = escape_margin(x0, mu) if horizon > 0 else x0.norm
    logger.debug("Equilibrium horizon %.12g with value %.12g", horizon, value)
    return PolicyPair(psi_ne=math.acos(mu), t_ne=horizon, value=value)


def suboptimal_distance(T: float, x0: RelState, mu: float) -> float:
    """Final distance when heading acos(mu) is held for the whole horizon."""
    mu = SpeedRatio(mu)
    return propagate_straight(x0, math.acos(mu), mu, T).norm


def equilibrium_distance_profile(t: np.ndarray, x0: RelState, mu: float) -> np.ndarray:
    """Distance to the pursuer over time while holding heading acos(mu)."""
    mu = SpeedRatio(mu)
    t = np.asarray(t, dtype=float)
    k = math.sqrt(1.0 - mu * mu)
    squared = (
        x0.x * x0.x
        + x0.y * x0.y
        + (1.0 - mu * mu) * (t * t - 2.0 * t * (x0.x - mu * x0.y / k))
    )
    return np.sqrt(np.maximum(squared, 0.0))
