import pytest

from pursuit_evasion.analysis.verification import verify_instance
from pursuit_evasion.config import OracleSettings
from pursuit_evasion.exceptions import ConfigError, VerificationFailed
from pursuit_evasion.game.schema import GameSpec, RelState


def test_unconstrained_instance_matches_heading_sweep():
    report = verify_instance(GameSpec(RelState(2.0, 0.3), 0.6, 2.1))
    assert report.regime == "unconstrained"
    assert report.oracle_status == "ok"
    assert report.passed
    assert report.gap == pytest.approx(0.0, abs=1e-3)
    assert report.gap >= -1e-9


def test_constrained_instance_matches_exit_sweep():
    report = verify_instance(GameSpec(RelState(2.0, 0.3), 0.6, 2.6), grid=2000)
    assert report.regime == "constrained"
    assert report.passed
    assert report.analytic_value >= report.oracle_value - 1e-4


def test_capture_instance_has_no_feasible_policy():
    report = verify_instance(GameSpec(RelState(1.05, 0.0), 0.7, 2.0))
    assert report.regime == "capture"
    assert report.oracle_status == "no_feasible_policy"
    assert report.oracle_value is None
    assert report.analytic_value == pytest.approx(1 / 6, abs=1e-9)
    assert report.passed


def test_report_serialises_to_dict():
    report = verify_instance(GameSpec(RelState(2.0, 0.3), 0.6, 1.0))
    record = report.to_dict()
    assert set(record) == {
        "regime",
        "analytic_value",
        "oracle_value",
        "gap",
        "oracle_status",
        "tolerance",
        "passed",
    }
    assert record["tolerance"] == 1e-3


def test_strict_mode_raises_on_disagreement():
    spec = GameSpec(RelState(2.0, 0.3), 0.6, 2.1)
    settings = OracleSettings(tolerance=1e-12)
    report = verify_instance(spec, grid=3, settings=settings)
    assert not report.passed
    with pytest.raises(VerificationFailed):
        verify_instance(spec, grid=3, settings=settings, strict=True)


def test_oracle_settings_validation():
    with pytest.raises(ConfigError):
        OracleSettings(dt=0.0)
    with pytest.raises(ConfigError):
        OracleSettings(exit_count=1)
    with pytest.raises(ConfigError):
        OracleSettings(tolerance=-1.0)
