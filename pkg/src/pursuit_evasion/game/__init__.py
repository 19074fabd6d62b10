from pursuit_evasion.game.capture import (
    capture_guaranteed,
    circle_point_capturable,
    classify,
    in_no_escape_zone,
    survival_heading,
    survival_time,
)
from pursuit_evasion.game.constrained import critical_time, solve
from pursuit_evasion.game.nash import equilibrium, t_min
from pursuit_evasion.game.schema import GameSpec, RegimeTag, RelState

__all__ = [
    "GameSpec",
    "RegimeTag",
    "RelState",
    "capture_guaranteed",
    "circle_point_capturable",
    "classify",
    "critical_time",
    "equilibrium",
    "in_no_escape_zone",
    "solve",
    "survival_heading",
    "survival_time",
    "t_min",
]
