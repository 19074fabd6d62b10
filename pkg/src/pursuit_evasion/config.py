from __future__ import annotations

import math
from dataclasses import dataclass, field
from pathlib import Path
from typing import Tuple

from pursuit_evasion.exceptions import ConfigError


@dataclass(frozen=True)
class SolverSettings:
    """Numerical tolerances shared by the analytic solvers."""

    quad_abs_tol: float = 1e-11
    bisect_xtol: float = 1e-12
    radicand_clamp: float = 1e-12
    degenerate_tol: float = 1e-12
    contact_tol: float = 1e-9
    bracket_offset: float = 1e-12
    check_tol: float = 1e-9

    def __post_init__(self) -> None:
        for name in (
            "quad_abs_tol",
            "bisect_xtol",
            "radicand_clamp",
            "degenerate_tol",
            "contact_tol",
            "bracket_offset",
            "check_tol",
        ):
            value = getattr(self, name)
            if not (math.isfinite(value) and value > 0):
                raise ConfigError(f"{name} must be a positive finite number, got {value}")


@dataclass(frozen=True)
class GridSettings:
    """Raster bounds (x_min, x_max, y_min, y_max) and resolution in cells."""

    bounds: Tuple[float, float, float, float] = (-1.5, 3.5, 0.0, 2.5)
    width: int = 400
    height: int = 400

    def __post_init__(self) -> None:
        if len(self.bounds) != 4 or not all(math.isfinite(b) for b in self.bounds):
            raise ConfigError(f"bounds must be four finite numbers, got {self.bounds}")
        x_min, x_max, y_min, y_max = self.bounds
        if x_min >= x_max or y_min >= y_max:
            raise ConfigError(f"bounds must be increasing, got {self.bounds}")
        if self.width < 1 or self.height < 1:
            raise ConfigError(
                f"resolution must be at least 1x1, got {self.width}x{self.height}"
            )

    @property
    def cell_count(self) -> int:
        return self.width * self.height


@dataclass(frozen=True)
class OracleSettings:
    """Defaults for the simulation oracle and its policy sweeps."""

    dt: float = 1e-4
    ride_dt: float = 1e-3
    heading_count: int = 3600
    exit_count: int = 2000
    tolerance: float = 1e-3

    def __post_init__(self) -> None:
        if not (self.dt > 0 and self.ride_dt > 0):
            raise ConfigError("oracle time steps must be positive")
        if self.heading_count < 2 or self.exit_count < 2:
            raise ConfigError("oracle sweeps need at least two policies")
        if not self.tolerance > 0:
            raise ConfigError("verification tolerance must be positive")


@dataclass(frozen=True)
class OutputPaths:
    """Central definition of report paths for saved figure data."""

    project_root: Path = field(
        default_factory=lambda: Path(__file__).resolve().parents[2]
    )
    reports_dir: Path = field(init=False)
    figure_data_dir: Path = field(init=False)

    def __post_init__(self) -> None:
        object.__setattr__(self, "reports_dir", self.project_root / "reports")
        object.__setattr__(
            self,
            "figure_data_dir",
            self.reports_dir / "figure_data",
        )

    def table_path(self, command: str) -> Path:
        """Default CSV location for a command's table."""
        return self.figure_data_dir / f"{command.replace('-', '_')}.csv"


DEFAULT_SOLVER = SolverSettings()
DEFAULT_GRID = GridSettings()
DEFAULT_ORACLE = OracleSettings()
