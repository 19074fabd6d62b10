from __future__ import annotations

import pandera as pa
from pandera.typing import Series

REGIME_LABELS = ["capture", "unconstrained", "constrained"]
INSIDE_LABEL = "inside"


class TrajectorySamplesSchema(pa.DataFrameModel):
    """Dense samples along an optimal trajectory."""

    t: Series[float] = pa.Field(ge=0, coerce=True)
    x: Series[float] = pa.Field(coerce=True)
    y: Series[float] = pa.Field(coerce=True)
    dist: Series[float] = pa.Field(ge=0, coerce=True)
    phase_index: Series[int] = pa.Field(ge=0, le=2, coerce=True)

    class Config:
        strict = True
        ordered = True


class HorizonSweepSchema(pa.DataFrameModel):
    """Optimal final locations as the horizon varies."""

    T: Series[float] = pa.Field(ge=0, coerce=True)
    regime: Series[str] = pa.Field(isin=REGIME_LABELS)
    theta_exit: Series[float] = pa.Field(ge=0, le=1.5707963268, nullable=True, coerce=True)
    d_f: Series[float] = pa.Field(ge=0, coerce=True)
    x_f: Series[float] = pa.Field(coerce=True)
    y_f: Series[float] = pa.Field(coerce=True)
    capture_time: Series[float] = pa.Field(ge=0, nullable=True, coerce=True)
    nonunique: Series[bool] = pa.Field(coerce=True)

    class Config:
        strict = True
        ordered = True


class RegionMapSchema(pa.DataFrameModel):
    """Regime label per raster cell centre."""

    x: Series[float] = pa.Field(coerce=True)
    y: Series[float] = pa.Field(coerce=True)
    regime: Series[str] = pa.Field(isin=REGIME_LABELS + [INSIDE_LABEL])

    class Config:
        strict = True
        ordered = True


class SurvivalMapSchema(pa.DataFrameModel):
    """Maximum survival time per raster cell; empty outside the no-escape zone."""

    x: Series[float] = pa.Field(coerce=True)
    y: Series[float] = pa.Field(coerce=True)
    t_survive: Series[float] = pa.Field(ge=0, nullable=True, coerce=True)

    class Config:
        strict = True
        ordered = True
