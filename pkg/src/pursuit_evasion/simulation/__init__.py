from pursuit_evasion.simulation.engine import SimulationEngine, simulate
from pursuit_evasion.simulation.schema import (
    ConstantHeading,
    HeadingSchedule,
    SimConfig,
    SimResult,
    ThreePhasePolicy,
)
from pursuit_evasion.simulation.sweeps import (
    sweep_constant_headings,
    sweep_exit_angles,
    sweep_survival_headings,
)

__all__ = [
    "ConstantHeading",
    "HeadingSchedule",
    "SimConfig",
    "SimResult",
    "SimulationEngine",
    "ThreePhasePolicy",
    "simulate",
    "sweep_constant_headings",
    "sweep_exit_angles",
    "sweep_survival_headings",
]
