from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Callable, Iterable, List, Optional, Sequence, TypeVar

import numpy as np
import pandas as pd

from pursuit_evasion.analysis.export import validate_table
from pursuit_evasion.config import DEFAULT_GRID, GridSettings
from pursuit_evasion.exceptions import ConfigError
from pursuit_evasion.game.capture import classify, in_no_escape_zone, survival_time
from pursuit_evasion.game.constrained import solve
from pursuit_evasion.game.schema import GameSpec, RelState, SpeedRatio
from pursuit_evasion.logging_config import get_logger
from pursuit_evasion.schemas import (
    INSIDE_LABEL,
    HorizonSweepSchema,
    RegionMapSchema,
    SurvivalMapSchema,
)

logger = get_logger(__name__)

ItemT = TypeVar("ItemT")
ResultT = TypeVar("ResultT")


@dataclass
class MapConfig:
    grid: GridSettings = DEFAULT_GRID
    workers: int = 1

    def __post_init__(self) -> None:
        if self.workers < 1:
            raise ConfigError(f"workers must be at least 1, got {self.workers}")


def ordered_map(
    func: Callable[[ItemT], ResultT], items: Sequence[ItemT], workers: int
) -> List[ResultT]:
    """Map in a thread pool while keeping input order."""
    if workers <= 1:
        return [func(item) for item in items]
    with ThreadPoolExecutor(max_workers=workers) as executor:
        return list(executor.map(func, items))


def cell_centers(grid: GridSettings) -> pd.DataFrame:
    """Cell centres in row-major order, y outer and x inner."""
    x_min, x_max, y_min, y_max = grid.bounds
    xs = x_min + (np.arange(grid.width) + 0.5) * (x_max - x_min) / grid.width
    ys = y_min + (np.arange(grid.height) + 0.5) * (y_max - y_min) / grid.height
    yy, xx = np.meshgrid(ys, xs, indexing="ij")
    return pd.DataFrame({"x": xx.ravel(), "y": yy.ravel()})


def classify_point(x: float, y: float, mu: float, T: float) -> str:
    """Regime label of a start point; 'inside' for starts within the circle."""
    state = RelState(x, abs(y))
    if state.norm < 1.0:
        return INSIDE_LABEL
    return classify(GameSpec(state, mu, T)).tag.value


def survival_value(x: float, y: float, mu: float) -> float:
    """Survival time of a start point, NaN outside the no-escape zone."""
    state = RelState(x, abs(y))
    if state.norm < 1.0:
        return math.nan
    if not in_no_escape_zone(state, mu):
        return math.nan
    return survival_time(state, mu)


def region_map(mu: float, T: float, config: MapConfig = MapConfig()) -> pd.DataFrame:
    mu = SpeedRatio(mu)
    cells = cell_centers(config.grid)
    labels = ordered_map(
        lambda xy: classify_point(xy[0], xy[1], mu, T),
        list(zip(cells["x"], cells["y"])),
        config.workers,
    )
    cells["regime"] = labels
    logger.info(
        "Region map for mu=%.3f, T=%.3f: %d cells", mu, T, config.grid.cell_count
    )
    return validate_table(cells, RegionMapSchema)


def survival_map(mu: float, config: MapConfig = MapConfig()) -> pd.DataFrame:
    mu = SpeedRatio(mu)
    cells = cell_centers(config.grid)
    cells["t_survive"] = ordered_map(
        lambda xy: survival_value(xy[0], xy[1], mu),
        list(zip(cells["x"], cells["y"])),
        config.workers,
    )
    logger.info(
        "Survival map for mu=%.3f: %d cells in the no-escape zone",
        mu,
        int(cells["t_survive"].notna().sum()),
    )
    return validate_table(cells, SurvivalMapSchema)


def horizon_values(t_min: float, t_max: float, steps: int) -> np.ndarray:
    if not t_min < t_max:
        raise ConfigError(f"need Tmin < Tmax, got {t_min} >= {t_max}")
    if t_min < 0:
        raise ConfigError(f"horizons must be nonnegative, got Tmin={t_min}")
    if steps < 2:
        raise ConfigError(f"need at least two steps, got {steps}")
    return np.linspace(t_min, t_max, steps)


def _or_nan(value: Optional[float]) -> float:
    return math.nan if value is None else value


def _horizon_row(x0: RelState, mu: float, T: float) -> dict:
    solution = solve(GameSpec(x0, mu, T))
    return {
        "T": T,
        "regime": solution.regime.tag.value,
        "theta_exit": _or_nan(solution.theta_exit),
        "d_f": solution.final_distance,
        "x_f": solution.final_state.x,
        "y_f": solution.final_state.y,
        "capture_time": _or_nan(solution.capture_time),
        "nonunique": solution.nonunique_flag,
    }


def horizon_sweep(
    x0: RelState,
    mu: float,
    horizons: Iterable[float],
    workers: int = 1,
) -> pd.DataFrame:
    """Optimal final location and distance for each horizon."""
    mu = SpeedRatio(mu)
    rows = ordered_map(lambda T: _horizon_row(x0, mu, float(T)), list(horizons), workers)
    df = pd.DataFrame(rows, columns=list(HorizonSweepSchema.to_schema().columns))
    logger.info("Horizon sweep from (%.6g, %.6g): %d rows", x0.x, x0.y, len(df))
    return validate_table(df, HorizonSweepSchema)
