from __future__ import annotations

from dataclasses import asdict, dataclass
from typing import Optional

from pursuit_evasion.config import DEFAULT_ORACLE, OracleSettings
from pursuit_evasion.exceptions import NoFeasiblePolicy, VerificationFailed
from pursuit_evasion.game.constrained import solve
from pursuit_evasion.game.schema import GameSpec, RegimeTag
from pursuit_evasion.logging_config import get_logger
from pursuit_evasion.simulation.sweeps import (
    sweep_constant_headings,
    sweep_exit_angles,
)

logger = get_logger(__name__)


@dataclass
class VerificationReport:
    regime: str
    analytic_value: Optional[float]
    oracle_value: Optional[float]
    gap: Optional[float]
    oracle_status: str
    tolerance: float
    passed: bool

    def to_dict(self) -> dict:
        return asdict(self)


def verify_instance(
    spec: GameSpec,
    grid: Optional[int] = None,
    settings: OracleSettings = DEFAULT_ORACLE,
    strict: bool = False,
) -> VerificationReport:
    """Compare the analytic optimum with the matching oracle sweep."""
    solution = solve(spec)
    regime = solution.regime.tag
    tolerance = settings.tolerance

    if regime is RegimeTag.GUARANTEED_CAPTURE:
        try:
            _, oracle_value = sweep_constant_headings(
                spec.x0, spec.mu, spec.T, grid or settings.heading_count
            )
        except NoFeasiblePolicy:
            report = VerificationReport(
                regime=regime.value,
                analytic_value=solution.capture_time,
                oracle_value=None,
                gap=None,
                oracle_status="no_feasible_policy",
                tolerance=tolerance,
                passed=True,
            )
        else:
            report = VerificationReport(
                regime=regime.value,
                analytic_value=solution.capture_time,
                oracle_value=oracle_value,
                gap=None,
                oracle_status="feasible_policy_found",
                tolerance=tolerance,
                passed=False,
            )
    else:
        try:
            if regime is RegimeTag.CONSTRAINED_ESCAPE:
                _, oracle_value = sweep_exit_angles(
                    spec.x0, spec.mu, spec.T, grid or settings.exit_count, settings.ride_dt
                )
            else:
                _, oracle_value = sweep_constant_headings(
                    spec.x0, spec.mu, spec.T, grid or settings.heading_count
                )
        except NoFeasiblePolicy:
            oracle_value = None

        if oracle_value is None:
            gap = None
            passed = False
            status = "no_feasible_policy"
        else:
            gap = solution.final_distance - oracle_value
            passed = abs(gap) <= tolerance
            status = "ok"
        report = VerificationReport(
            regime=regime.value,
            analytic_value=solution.final_distance,
            oracle_value=oracle_value,
            gap=gap,
            oracle_status=status,
            tolerance=tolerance,
            passed=passed,
        )

    if report.passed:
        logger.info("Verification passed for regime %s (gap=%s)", report.regime, report.gap)
    else:
        logger.warning(
            "Verification failed for regime %s (oracle=%s, gap=%s)",
            report.regime,
            report.oracle_status,
            report.gap,
        )
    if strict and not report.passed:
        raise VerificationFailed(f"oracle disagrees with the analytic solution: {report}")
    return report
