import math

import numpy as np
import pandas as pd
import pytest

from pursuit_evasion.analysis.maps import (
    MapConfig,
    cell_centers,
    classify_point,
    horizon_sweep,
    horizon_values,
    ordered_map,
    region_map,
    survival_map,
    survival_value,
)
from pursuit_evasion.config import GridSettings
from pursuit_evasion.exceptions import ConfigError
from pursuit_evasion.game.constrained import critical_time
from pursuit_evasion.game.schema import RelState


@pytest.fixture
def small_grid():
    return GridSettings(bounds=(-1.5, 3.5, 0.0, 2.5), width=20, height=10)


def test_grid_settings_validation():
    with pytest.raises(ConfigError):
        GridSettings(bounds=(1.0, 0.0, 0.0, 1.0))
    with pytest.raises(ConfigError):
        GridSettings(width=0)
    with pytest.raises(ConfigError):
        GridSettings(bounds=(0.0, 1.0, 0.0))
    with pytest.raises(ConfigError):
        MapConfig(workers=0)


def test_cell_centers_are_row_major(small_grid):
    cells = cell_centers(small_grid)
    assert len(cells) == small_grid.cell_count
    assert cells["x"].iloc[0] == pytest.approx(-1.375)
    assert cells["y"].iloc[0] == pytest.approx(0.125)
    assert cells["x"].iloc[1] > cells["x"].iloc[0]
    assert cells["y"].iloc[1] == cells["y"].iloc[0]
    assert cells["y"].iloc[small_grid.width] > cells["y"].iloc[0]


def test_ordered_map_keeps_input_order():
    items = list(range(50))
    assert ordered_map(lambda i: i * i, items, 4) == [i * i for i in items]


@pytest.mark.parametrize(
    "point, expected",
    [
        ((0.5, 0.5), "inside"),
        ((1.05, 0.0), "capture"),
        ((1.5, 0.05), "constrained"),
        ((-1.0, 1.0), "unconstrained"),
    ],
)
def test_classify_point_spot_checks(point, expected):
    assert classify_point(*point, mu=0.7, T=2.0) == expected


def test_classify_point_at_survival_threshold():
    assert classify_point(1.2, 0.0, mu=0.6, T=2.0) == "capture"
    assert classify_point(1.2, 0.0, mu=0.6, T=0.25) == "unconstrained"


def test_region_map_labels(small_grid):
    df = region_map(0.7, 2.0, MapConfig(grid=small_grid))
    assert list(df.columns) == ["x", "y", "regime"]
    assert len(df) == small_grid.cell_count
    assert {"inside", "capture", "constrained", "unconstrained"} >= set(df["regime"])
    inside = np.hypot(df["x"], df["y"]) < 1.0
    assert (df.loc[inside, "regime"] == "inside").all()


def test_zero_horizon_has_no_capture_or_constraint(small_grid):
    df = region_map(0.6, 0.0, MapConfig(grid=small_grid))
    assert set(df["regime"]) <= {"inside", "unconstrained"}


def test_region_map_is_identical_across_worker_counts(small_grid):
    serial = region_map(0.7, 2.0, MapConfig(grid=small_grid, workers=1))
    parallel = region_map(0.7, 2.0, MapConfig(grid=small_grid, workers=4))
    pd.testing.assert_frame_equal(serial, parallel)


def test_survival_values():
    assert survival_value(1.0, 0.0, 0.6) == pytest.approx(0.0, abs=1e-15)
    assert survival_value(1.2, 0.0, 0.6) == pytest.approx(0.5)
    assert math.isnan(survival_value(2.0, 0.3, 0.6))
    assert math.isnan(survival_value(0.2, 0.2, 0.6))


def test_survival_map_is_empty_outside_zone(small_grid):
    df = survival_map(0.6, MapConfig(grid=small_grid))
    assert list(df.columns) == ["x", "y", "t_survive"]
    filled = df.dropna()
    assert (filled["x"] > 0.6).all()
    assert (filled["t_survive"] >= 0).all()


def test_horizon_values_validation():
    assert len(horizon_values(0.0, 4.0, 2)) == 2
    with pytest.raises(ConfigError):
        horizon_values(4.0, 0.0, 10)
    with pytest.raises(ConfigError):
        horizon_values(0.0, 4.0, 1)
    with pytest.raises(ConfigError):
        horizon_values(-1.0, 4.0, 10)


def test_horizon_sweep_rows_and_regimes():
    x0 = RelState(2.0, 0.3)
    df = horizon_sweep(x0, 0.6, horizon_values(0.0, 4.0, 41))
    assert len(df) == 41
    assert list(df.columns) == [
        "T",
        "regime",
        "theta_exit",
        "d_f",
        "x_f",
        "y_f",
        "capture_time",
        "nonunique",
    ]
    t_c = critical_time(x0, 0.6)
    assert (df.loc[df["T"] < t_c, "regime"] == "unconstrained").all()
    assert (df.loc[df["T"] > t_c, "regime"] == "constrained").all()
    assert df.loc[df["regime"] == "unconstrained", "theta_exit"].isna().all()


def test_horizon_sweep_distance_is_continuous():
    x0 = RelState(2.0, 0.3)
    df = horizon_sweep(x0, 0.6, horizon_values(1.5, 3.0, 301))
    assert np.abs(np.diff(df["d_f"].to_numpy())).max() < 0.02


def test_horizon_sweep_flags_virtual_point_at_origin():
    df = horizon_sweep(RelState(2.0, 0.0), 0.6, horizon_values(0.0, 4.0, 401))
    row = df.loc[np.isclose(df["T"], 2.0)]
    assert len(row) == 1
    assert bool(row["nonunique"].iloc[0])
    assert df["nonunique"].sum() == 1


def test_horizon_sweep_is_identical_across_worker_counts():
    horizons = horizon_values(0.0, 4.0, 41)
    serial = horizon_sweep(RelState(2.0, 0.3), 0.6, horizons, workers=1)
    parallel = horizon_sweep(RelState(2.0, 0.3), 0.6, horizons, workers=3)
    pd.testing.assert_frame_equal(serial, parallel)
