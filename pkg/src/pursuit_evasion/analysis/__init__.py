from pursuit_evasion.analysis.export import OutputRecord, render_table, write_table
from pursuit_evasion.analysis.maps import (
    MapConfig,
    horizon_sweep,
    region_map,
    survival_map,
)
from pursuit_evasion.analysis.verification import VerificationReport, verify_instance

__all__ = [
    "MapConfig",
    "OutputRecord",
    "VerificationReport",
    "horizon_sweep",
    "region_map",
    "render_table",
    "survival_map",
    "verify_instance",
    "write_table",
]
