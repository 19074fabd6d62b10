from __future__ import annotations

import io
import json
import math
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Dict, Optional, Type

import pandas as pd
import pandera as pa

from pursuit_evasion.logging_config import get_logger

logger = get_logger(__name__)

SCHEMA_VERSION = 1
SIGNIFICANT_DIGITS = 12


def round_floats(value: Any) -> Any:
    """Round every float in a nested structure to 12 significant digits."""
    if isinstance(value, bool) or value is None:
        return value
    if isinstance(value, float):
        if not math.isfinite(value):
            raise ValueError(f"non-finite value {value} in output")
        return float(f"{value:.{SIGNIFICANT_DIGITS}g}")
    if isinstance(value, dict):
        return {str(k): round_floats(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [round_floats(v) for v in value]
    return value


@dataclass
class OutputRecord:
    command: str
    payload: Dict[str, Any] = field(default_factory=dict)
    schema_version: int = SCHEMA_VERSION

    def to_json(self) -> str:
        body = {
            "schema_version": self.schema_version,
            "command": self.command,
            "payload": round_floats(self.payload),
        }
        return json.dumps(body, sort_keys=True, allow_nan=False)


def validate_table(df: pd.DataFrame, schema: Type[pa.DataFrameModel]) -> pd.DataFrame:
    try:
        return schema.validate(df, lazy=True)
    except pa.errors.SchemaErrors as err:
        logger.warning(
            "%s validation failed with %d errors", schema.__name__, len(err.failure_cases)
        )
        raise


def render_table(df: pd.DataFrame) -> str:
    """CSV text with fixed float formatting and '\\n' line endings."""
    buffer = io.StringIO()
    df.to_csv(
        buffer,
        index=False,
        float_format=f"%.{SIGNIFICANT_DIGITS}g",
        lineterminator="\n",
        na_rep="",
    )
    return buffer.getvalue()


def write_table(df: pd.DataFrame, path: Optional[Path] = None) -> str:
    """Render a table and write it to path when given; returns the CSV text."""
    text = render_table(df)
    if path is not None:
        path = Path(path)
        path.parent.mkdir(parents=True, exist_ok=True)
        with open(path, "w", encoding="utf-8", newline="") as handle:
            handle.write(text)
        logger.info("Table with %d rows saved to %s", len(df), path)
    return text
