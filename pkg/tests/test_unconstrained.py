import math

import numpy as np
import pytest

from pursuit_evasion.exceptions import DomainError
from pursuit_evasion.game.capture import classify
from pursuit_evasion.game.kinematics import propagate_straight
from pursuit_evasion.game.schema import GameSpec, RegimeTag, RelState
from pursuit_evasion.game.unconstrained import (
    collision_time,
    intersects_proximity_circle,
    optimal_heading,
    solve_unconstrained,
)
from pursuit_evasion.simulation.sweeps import sweep_constant_headings


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


def random_unconstrained_specs(rng, count):
    specs = []
    while len(specs) < count:
        mu = rng.uniform(0.3, 0.9)
        radius = rng.uniform(1.05, 4.0)
        angle = rng.uniform(0.0, math.pi)
        x0 = RelState(radius * math.cos(angle), radius * math.sin(angle))
        spec = GameSpec(x0, mu, rng.uniform(0.0, 4.0))
        if classify(spec).tag is RegimeTag.UNCONSTRAINED_ESCAPE:
            specs.append(spec)
    return specs


def test_optimal_heading_examples():
    assert optimal_heading(0.0, RelState(2.0, 0.0), 1.0) == pytest.approx(0.0)
    assert optimal_heading(0.0, RelState(1.0, 1.0), 1.0) == pytest.approx(math.pi / 2)
    assert optimal_heading(0.0, RelState(2.0, 0.3), 1.775) == pytest.approx(
        math.acos(0.6), abs=1e-12
    )


def test_optimal_heading_rejects_time_past_horizon():
    with pytest.raises(DomainError):
        optimal_heading(2.0, RelState(2.0, 0.0), 1.0)


def test_intersection_examples():
    x0 = RelState(2.0, 0.0)
    assert intersects_proximity_circle(x0, 0.0, 0.6, 2.0) is None
    assert intersects_proximity_circle(x0, 0.0, 0.6, 10.0) == pytest.approx(2.5)
    assert intersects_proximity_circle(x0, math.pi, 0.6, 10.0) == pytest.approx(0.625)
    assert intersects_proximity_circle(x0, math.pi, 0.6, 0.5) is None


def test_touching_at_horizon_is_not_an_intersection():
    x0 = RelState(2.0, 0.0)
    t_c = collision_time(x0, math.pi, 0.6)
    assert intersects_proximity_circle(x0, math.pi, 0.6, t_c) is None


def test_intersection_rejects_start_inside_circle():
    with pytest.raises(DomainError):
        intersects_proximity_circle(RelState(0.5, 0.0), 0.0, 0.6, 1.0)


def test_solve_unconstrained_retreat():
    solution = solve_unconstrained(GameSpec(RelState(2.0, 0.0), 0.6, 1.0))
    assert solution is not None
    (segment,) = solution.phases
    assert segment.psi == pytest.approx(0.0)
    assert solution.final_state.x == pytest.approx(1.6)
    assert solution.final_distance == pytest.approx(1.6)
    assert solution.regime.tag is RegimeTag.UNCONSTRAINED_ESCAPE


def test_solve_unconstrained_around_critical_time():
    x0 = RelState(2.0, 0.3)
    assert solve_unconstrained(GameSpec(x0, 0.6, 2.1)) is not None
    assert solve_unconstrained(GameSpec(x0, 0.6, 2.6)) is None


def test_solve_unconstrained_refuses_capture():
    with pytest.raises(DomainError):
        solve_unconstrained(GameSpec(RelState(1.05, 0.0), 0.7, 2.0))


def test_virtual_point_at_origin_is_flagged():
    solution = solve_unconstrained(GameSpec(RelState(2.0, 0.0), 0.6, 2.0))
    assert solution is not None
    assert solution.nonunique_flag
    assert solution.phases[0].psi == pytest.approx(math.acos(0.6))
    assert solution.final_distance == pytest.approx(1.2)


@pytest.mark.parametrize("T", [0.5, 1.0, 2.1])
def test_terminal_alignment_and_constant_heading(T):
    x0, mu = RelState(2.0, 0.3), 0.6
    solution = solve_unconstrained(GameSpec(x0, mu, T))
    psi = solution.phases[0].psi
    d_f = solution.final_distance
    assert math.cos(psi) == pytest.approx((x0.x - T) / (d_f - mu * T), abs=1e-10)
    assert math.sin(psi) == pytest.approx(x0.y / (d_f - mu * T), abs=1e-10)

    for t in np.linspace(0.0, T, 25):
        state = propagate_straight(x0, psi, mu, float(t))
        assert optimal_heading(float(t), state, T) == pytest.approx(psi, abs=1e-10)


def test_unconstrained_solutions_stay_feasible_and_dominate_oracle(rng):
    for spec in random_unconstrained_specs(rng, 100):
        solution = solve_unconstrained(spec)
        assert solution is not None
        psi = solution.phases[0].psi

        times = np.linspace(0.0, spec.T, 10_000)
        xs = spec.x0.x + times * (spec.mu * math.cos(psi) - 1.0)
        ys = spec.x0.y + times * spec.mu * math.sin(psi)
        assert np.hypot(xs, ys).min() >= 1.0 - 1e-9

        _, oracle = sweep_constant_headings(spec.x0, spec.mu, spec.T, 3600)
        assert solution.final_distance >= oracle - 1e-3
