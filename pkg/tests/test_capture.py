import math

import numpy as np
import pytest
from hypothesis import assume, given, settings
from hypothesis import strategies as st

from pursuit_evasion.exceptions import DomainError
from pursuit_evasion.game.capture import (
    capture_guaranteed,
    circle_point_capturable,
    classify,
    escape_margin,
    in_capture_region,
    in_no_escape_zone,
    reachable_bound,
    survival_heading,
    survival_time,
)
from pursuit_evasion.game.kinematics import propagate_straight, reflect_state
from pursuit_evasion.game.schema import GameSpec, RegimeTag, RelState
from pursuit_evasion.simulation.engine import simulate
from pursuit_evasion.simulation.schema import ConstantHeading, SimConfig


def test_no_escape_zone_examples():
    assert in_no_escape_zone(RelState(1.05, 0.0), 0.7)
    assert not in_no_escape_zone(RelState(2.0, 0.3), 0.6)
    assert not in_no_escape_zone(RelState(0.5, 2.0), 0.9)


def test_escape_margin_value():
    assert escape_margin(RelState(2.0, 0.3), 0.6) == pytest.approx(1.44)


def test_survival_time_examples():
    assert survival_time(RelState(1.0, 0.0), 0.6) == pytest.approx(0.0, abs=1e-15)
    assert survival_time(RelState(1.2, 0.0), 0.6) == pytest.approx(0.5, abs=1e-12)
    assert survival_time(RelState(1.05, 0.0), 0.7) == pytest.approx(1 / 6, abs=1e-12)


def test_survival_time_outside_zone_raises():
    with pytest.raises(DomainError):
        survival_time(RelState(2.0, 0.3), 0.6)
    with pytest.raises(DomainError):
        survival_heading(RelState(2.0, 0.3), 0.6)


def test_survival_heading_on_axis_is_retreat():
    assert survival_heading(RelState(1.2, 0.0), 0.6) == pytest.approx(0.0, abs=1e-12)
    assert survival_heading(RelState(1.05, 0.0), 0.7) == pytest.approx(0.0, abs=1e-12)


def test_survival_heading_lands_on_circle_at_survival_time():
    x0 = RelState(1.2, 0.0)
    end = propagate_straight(x0, survival_heading(x0, 0.6), 0.6, 0.5)
    assert end.norm == pytest.approx(1.0, abs=1e-9)


def test_survival_heading_first_contact_off_axis():
    x0, mu = RelState(1.1, 0.05), 0.7
    t_s = survival_time(x0, mu)
    psi = survival_heading(x0, mu)
    assert psi > 0

    result = simulate(x0, SimConfig(ConstantHeading(psi), ride_on_contact=False), mu, 1.0)
    assert result.first_capture_time == pytest.approx(t_s, abs=1e-6)


def test_capture_guaranteed_examples():
    assert capture_guaranteed(GameSpec(RelState(1.05, 0.0), 0.7, 2.0))
    assert not capture_guaranteed(GameSpec(RelState(1.05, 0.0), 0.7, 0.1))
    assert not capture_guaranteed(GameSpec(RelState(2.0, 0.3), 0.6, 100.0))


def test_circle_point_capturable():
    assert circle_point_capturable(0.0, 0.6)
    assert not circle_point_capturable(math.pi / 2, 0.6)
    assert not circle_point_capturable(math.acos(0.6), 0.6)
    assert circle_point_capturable(-0.5, 0.6)


def test_classify_spot_checks():
    mu, T = 0.7, 2.0
    capture = classify(GameSpec(RelState(1.05, 0.0), mu, T))
    assert capture.tag is RegimeTag.GUARANTEED_CAPTURE
    assert capture.survival_time == pytest.approx(1 / 6)

    assert classify(GameSpec(RelState(1.5, 0.05), mu, T)).tag is RegimeTag.CONSTRAINED_ESCAPE
    assert classify(GameSpec(RelState(-1.0, 1.0), mu, T)).tag is RegimeTag.UNCONSTRAINED_ESCAPE


def test_classify_reflection_symmetry():
    for x, y in [(1.05, -0.02), (1.5, -0.05), (-1.0, -1.0), (2.0, -0.3)]:
        mirrored, reflected = reflect_state(RelState(x, y))
        assert reflected
        direct = classify(GameSpec(RelState(x, abs(y)), 0.7, 2.0))
        assert classify(GameSpec(mirrored, 0.7, 2.0)) == direct


def test_capture_region_nesting():
    xs = np.linspace(-1.5, 3.5, 41)
    ys = np.linspace(0.0, 2.5, 21)
    horizons = [0.05, 0.2, 0.5, 1.0, 3.0]
    for x in xs:
        for y in ys:
            state = RelState(float(x), float(y))
            if state.norm < 1.0:
                continue
            membership = [in_capture_region(state, 0.7, T) for T in horizons]
            for earlier, later in zip(membership, membership[1:]):
                assert later or not earlier


def zone_point(mu: float, u: float, v: float) -> RelState:
    """Point of the no-escape zone from two unit fractions."""
    k = math.sqrt(1.0 - mu * mu)
    x = mu + u * (1.0 / mu - mu)
    y_low = math.sqrt(max(1.0 - x * x, 0.0))
    y_high = (1.0 - mu * x) / k
    return RelState(x, y_low + v * (y_high - y_low))


@given(
    mu=st.floats(min_value=0.2, max_value=0.9),
    u=st.floats(min_value=0.001, max_value=0.999),
    v=st.floats(min_value=0.0, max_value=0.999),
)
@settings(max_examples=200)
def test_reachable_bound_is_one_at_survival_time(mu, u, v):
    state = zone_point(mu, u, v)
    assume(state.norm >= 1.0 and in_no_escape_zone(state, mu))
    t_s = survival_time(state, mu)
    assert reachable_bound(t_s, state, mu) == pytest.approx(1.0, abs=1e-9)


@given(
    mu=st.floats(min_value=0.2, max_value=0.9),
    radius=st.floats(min_value=1.0, max_value=4.0),
    angle=st.floats(min_value=0.0, max_value=math.pi),
)
@settings(max_examples=100)
def test_acos_mu_heading_escapes_outside_zone(mu, radius, angle):
    state = RelState(radius * math.cos(angle), radius * math.sin(angle))
    assume(not in_no_escape_zone(state, mu))
    psi = math.acos(mu)
    for t in np.linspace(0.0, 10.0, 501):
        assert propagate_straight(state, psi, mu, float(t)).norm >= 1.0 - 1e-9
