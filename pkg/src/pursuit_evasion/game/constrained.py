"""Three-phase optimal trajectories that ride the proximity circle.

An evader whose straight optimal path would cross the circle instead heads
for the upper tangent point, rides the circle with zero radial velocity and
leaves it tangentially at the exit angle that uses up the horizon exactly.
"""

from __future__ import annotations

import math
from typing import Optional

import numpy as np
import pandas as pd
from scipy.integrate import quad, solve_ivp
from scipy.optimize import bisect

from pursuit_evasion.config import DEFAULT_SOLVER, SolverSettings
from pursuit_evasion.exceptions import DomainError
from pursuit_evasion.game.capture import (
    capture_guaranteed,
    in_no_escape_zone,
    survival_heading,
    survival_time,
)
from pursuit_evasion.game.kinematics import (
    headings_of_rel_heading,
    propagate_straight,
    rel_velocity_of_heading,
    tangent_rel_heading,
    velocity_components,
    wrap_angle,
)
from pursuit_evasion.game.schema import (
    ConstraintArc,
    GameSpec,
    RegimeClass,
    RegimeTag,
    RelState,
    SpeedRatio,
    StraightSegment,
    TangentEntry,
    TrajectorySolution,
)
from pursuit_evasion.game.unconstrained import solve_unconstrained
from pursuit_evasion.logging_config import get_logger

logger = get_logger(__name__)

_ARC_SLACK = 1e-12


def _tangential_speed_term(theta: float, mu: float) -> float:
    cos_t = math.cos(theta)
    return math.sqrt(max(mu * mu - cos_t * cos_t, 0.0))


def riding_rate(theta: float, mu: float) -> float:
    """Angular velocity while riding the circle counter-clockwise."""
    mu = SpeedRatio(mu)
    return _tangential_speed_term(theta, mu) + math.sin(theta)


def tangent_entry(
    x0: RelState, mu: float, settings: SolverSettings = DEFAULT_SOLVER
) -> TangentEntry:
    """Straight entry onto the circle at the upper tangent point."""
    mu = SpeedRatio(mu)
    r = x0.norm
    if r < 1.0 - settings.contact_tol:
        raise DomainError(f"tangent entry needs |x0| >= 1, got {r}")

    phi_tan = tangent_rel_heading(x0) if r >= 1.0 else wrap_angle(x0.angle + math.pi / 2)
    theta_tan = math.acos(min(1.0, 1.0 / r)) + x0.angle

    if r - 1.0 < settings.contact_tol:
        # Start on the circle: tangent point is the start itself.
        sin_phi = math.sin(phi_tan)
        ratio = max(-1.0, min(1.0, sin_phi / mu))
        psi_tan = wrap_angle(phi_tan - math.asin(ratio))
        return TangentEntry(phi_tan=phi_tan, psi_tan=psi_tan, t_tan=0.0, theta_tan=theta_tan)

    fast = headings_of_rel_heading(phi_tan, mu).fast
    t_tan = math.sqrt(r * r - 1.0) / fast.v
    entry = TangentEntry(phi_tan=phi_tan, psi_tan=fast.psi, t_tan=t_tan, theta_tan=theta_tan)

    landing = propagate_straight(x0, fast.psi, mu, t_tan)
    target = RelState(math.cos(theta_tan), math.sin(theta_tan))
    if landing.distance_to(target) > settings.check_tol:
        logger.warning(
            "Tangent entry lands %.3e away from the tangent point",
            landing.distance_to(target),
        )
    return entry


def arc_time(
    theta1: float, theta2: float, mu: float, settings: SolverSettings = DEFAULT_SOLVER
) -> float:
    """Time to ride the circle from theta1 to theta2.

    Uses 1 / (sin + w) = (sin - w) / (1 - mu^2) with w = sqrt(mu^2 - cos^2),
    so only the integral of w needs quadrature. The substitution
    theta = acos(mu) + u^2 removes the square-root endpoint.
    """
    mu = SpeedRatio(mu)
    theta_min = math.acos(mu)
    if theta1 < theta_min - _ARC_SLACK or theta2 > math.pi / 2 + _ARC_SLACK:
        raise DomainError(
            f"arc [{theta1:.12g}, {theta2:.12g}] leaves [acos(mu), pi/2] for mu={mu}"
        )
    if theta1 > theta2 + _ARC_SLACK:
        raise DomainError(f"arc must run counter-clockwise, got {theta1} > {theta2}")
    if theta2 <= theta1:
        return 0.0

    u1 = math.sqrt(max(theta1 - theta_min, 0.0))
    u2 = math.sqrt(max(theta2 - theta_min, 0.0))

    def integrand(u: float) -> float:
        return 2.0 * u * _tangential_speed_term(theta_min + u * u, mu)

    integral, _ = quad(
        integrand, u1, u2, epsabs=settings.quad_abs_tol, epsrel=1e-12, limit=200
    )
    return (math.cos(theta1) - math.cos(theta2) - integral) / (1.0 - mu * mu)


def remaining_time_at_exit(theta: float, mu: float) -> float:
    """Time left at exit angle theta for a tangential exit to be optimal."""
    mu = SpeedRatio(mu)
    if theta >= math.pi / 2:
        raise DomainError("no finite remaining time reaches an exit at pi/2")
    cos_t = math.cos(theta)
    w = _tangential_speed_term(theta, mu)
    return w / (cos_t * (math.sin(theta) + w))


def exit_condition_residual(theta: float, t_r: float, mu: float) -> float:
    mu = SpeedRatio(mu)
    cos_t = math.cos(theta)
    return (mu * t_r + math.sqrt(1.0 + t_r * t_r - 2.0 * t_r * cos_t)) * cos_t - mu


def exit_cubic(s: float, t_r: float, mu: float) -> float:
    """Polynomial form of the exit condition in s = cos(theta_exit)."""
    mu = SpeedRatio(mu)
    return (
        2.0 * t_r * s**3
        - (1.0 + t_r * t_r * (1.0 - mu * mu)) * s**2
        - 2.0 * mu * mu * t_r * s
        + mu * mu
    )


def exit_angle(
    t_available: float,
    theta_tan: float,
    mu: float,
    settings: SolverSettings = DEFAULT_SOLVER,
) -> float:
    """Exit angle at which riding plus the tangential exit fill t_available."""
    mu = SpeedRatio(mu)
    theta_lo = max(theta_tan, math.acos(mu))
    theta_hi = math.pi / 2 - settings.bracket_offset
    if theta_lo >= theta_hi:
        raise DomainError(f"tangent angle {theta_tan} leaves no room to ride")

    def excess(theta: float) -> float:
        ride = arc_time(theta_lo, theta, mu, settings)
        return remaining_time_at_exit(theta, mu) + ride - t_available

    lo_value = excess(theta_lo)
    if lo_value >= 0:
        raise DomainError(
            f"t_available={t_available:.12g} does not exceed the grazing time "
            f"{lo_value + t_available:.12g}; the horizon is unconstrained"
        )
    hi_value = excess(theta_hi)
    if hi_value <= 0:
        logger.debug("Exit bracket saturates at pi/2 for t_available=%.6g", t_available)
        return theta_hi

    theta_exit = bisect(excess, theta_lo, theta_hi, xtol=settings.bisect_xtol, maxiter=200)
    logger.debug(
        "Exit angle %.12f found on [%.6f, %.6f] for t_available=%.6f",
        theta_exit,
        theta_lo,
        theta_hi,
        t_available,
    )
    return theta_exit


def final_state_closed_form(theta_exit: float, t_r: float, mu: float) -> RelState:
    """Final position after a tangential exit at theta_exit lasting t_r."""
    mu = SpeedRatio(mu)
    cos_t, sin_t = math.cos(theta_exit), math.sin(theta_exit)
    reach = t_r * (sin_t + _tangential_speed_term(theta_exit, mu))
    return RelState(cos_t - reach * sin_t, sin_t + reach * cos_t)


def critical_time(
    x0: RelState, mu: float, settings: SolverSettings = DEFAULT_SOLVER
) -> float:
    """Horizon beyond which the optimal trajectory rides the circle.

    Returns ``math.inf`` for starts whose upper tangent point lies at or past
    pi/2; their straight optimal path never meets the circle.
    """
    mu = SpeedRatio(mu)
    if in_no_escape_zone(x0, mu):
        raise DomainError("critical time is undefined inside the no-escape zone")
    if x0.y <= settings.degenerate_tol:
        return x0.x if x0.x > 1.0 else math.inf

    theta_tan = math.acos(min(1.0, 1.0 / x0.norm)) + x0.angle
    if theta_tan >= math.pi / 2:
        logger.debug("Tangent angle %.6f is past pi/2; never constrained", theta_tan)
        return math.inf

    entry = tangent_entry(x0, mu, settings)
    tan_psi = math.tan(entry.psi_tan)
    if math.sin(entry.psi_tan) == 0.0 or not math.isfinite(tan_psi):
        raise DomainError(f"tangent heading {entry.psi_tan} has no finite cotangent")
    return (
        entry.t_tan
        + math.cos(entry.theta_tan)
        - math.sin(entry.theta_tan) / tan_psi
    )


def _capture_solution(spec: GameSpec) -> TrajectorySolution:
    t_s = survival_time(spec.x0, spec.mu)
    psi = survival_heading(spec.x0, spec.mu) if t_s > 0 else spec.x0.angle
    end = propagate_straight(spec.x0, psi, spec.mu, t_s)
    segment = StraightSegment(start=spec.x0, psi=psi, duration=t_s, end=end)
    return TrajectorySolution(
        regime=RegimeClass(RegimeTag.GUARANTEED_CAPTURE, t_s),
        phases=(segment,),
        final_state=end,
        final_distance=end.norm,
        capture_time=t_s,
    )


def _three_phase_solution(spec: GameSpec, settings: SolverSettings) -> TrajectorySolution:
    mu = spec.mu
    entry = tangent_entry(spec.x0, mu, settings)
    t_available = spec.T - entry.t_tan
    theta_lo = max(entry.theta_tan, math.acos(mu))
    if theta_lo >= math.pi / 2:
        raise DomainError(f"tangent point {entry.theta_tan} lies beyond pi/2")

    if t_available <= remaining_time_at_exit(theta_lo, mu):
        logger.debug("Horizon %.12g is at the grazing limit; exit at tangency", spec.T)
        theta_exit = theta_lo
    else:
        theta_exit = exit_angle(t_available, entry.theta_tan, mu, settings)

    t_r = remaining_time_at_exit(theta_exit, mu)
    arc = ConstraintArc(
        theta_start=theta_lo,
        theta_end=theta_exit,
        duration=arc_time(theta_lo, theta_exit, mu, settings),
    )
    entry_end = propagate_straight(spec.x0, entry.psi_tan, mu, entry.t_tan)
    entry_segment = StraightSegment(
        start=spec.x0, psi=entry.psi_tan, duration=entry.t_tan, end=entry_end
    )

    exit_start = arc.end
    psi_exit = math.atan2(exit_start.y, exit_start.x - t_r)
    exit_end = propagate_straight(exit_start, psi_exit, mu, t_r)
    exit_segment = StraightSegment(start=exit_start, psi=psi_exit, duration=t_r, end=exit_end)
    final_distance = mu / math.cos(theta_exit)

    _check_exit(theta_exit, psi_exit, t_r, exit_end, final_distance, mu, settings)
    return TrajectorySolution(
        regime=RegimeClass(RegimeTag.CONSTRAINED_ESCAPE),
        phases=(entry_segment, arc, exit_segment),
        final_state=exit_end,
        final_distance=final_distance,
        entry=entry,
        theta_exit=theta_exit,
        remaining_time=t_r,
    )


def _check_exit(
    theta_exit: float,
    psi_exit: float,
    t_r: float,
    exit_end: RelState,
    final_distance: float,
    mu: float,
    settings: SolverSettings,
) -> None:
    phi_exit = rel_velocity_of_heading(psi_exit, mu).phi
    tangency = wrap_angle(phi_exit - theta_exit - math.pi / 2)
    if abs(tangency) > settings.check_tol:
        logger.warning("Exit segment misses tangency by %.3e rad", tangency)

    closed_form = final_state_closed_form(theta_exit, t_r, mu)
    if exit_end.distance_to(closed_form) > settings.check_tol:
        logger.warning(
            "Propagated final state differs from the closed form by %.3e",
            exit_end.distance_to(closed_form),
        )
    if final_distance <= 1.0:
        logger.warning("Constrained final distance %.12g does not exceed 1", final_distance)


def solve(spec: GameSpec, settings: SolverSettings = DEFAULT_SOLVER) -> TrajectorySolution:
    """Optimal trajectory for any instance: capture, straight or three-phase."""
    if capture_guaranteed(spec):
        logger.debug("Capture guaranteed for x0=(%.6g, %.6g)", spec.x0.x, spec.x0.y)
        return _capture_solution(spec)

    solution = solve_unconstrained(spec, settings)
    if solution is not None:
        return solution
    return _three_phase_solution(spec, settings)


def _phase_start_times(solution: TrajectorySolution) -> np.ndarray:
    return np.concatenate(([0.0], np.asarray(solution.switch_times, dtype=float)))


def sample_solution(solution: TrajectorySolution, mu: float, n: int = 1000) -> pd.DataFrame:
    """Dense samples (t, x, y, dist, phase_index) along a solution."""
    mu = SpeedRatio(mu)
    if n < 2:
        raise DomainError(f"need at least two samples, got {n}")

    times = np.linspace(0.0, solution.total_duration, n)
    starts = _phase_start_times(solution)
    index = np.searchsorted(starts, times, side="right") - 1
    phase_index = np.clip(index, 0, len(starts) - 1)
    xs = np.empty(n)
    ys = np.empty(n)

    for index, phase in enumerate(solution.phases):
        mask = phase_index == index
        if not mask.any():
            continue
        local = times[mask] - starts[index]
        if isinstance(phase, StraightSegment):
            vx, vy = velocity_components(phase.psi, mu)
            xs[mask] = phase.start.x + local * vx
            ys[mask] = phase.start.y + local * vy
        else:
            theta = _arc_angles(phase, local, mu)
            xs[mask] = np.cos(theta)
            ys[mask] = np.sin(theta)

    return pd.DataFrame(
        {
            "t": times,
            "x": xs,
            "y": ys,
            "dist": np.hypot(xs, ys),
            "phase_index": phase_index.astype(int),
        }
    )


def _arc_angles(arc: ConstraintArc, local: np.ndarray, mu: float) -> np.ndarray:
    if arc.duration <= 0:
        return np.full(local.shape, arc.theta_start)
    ride = solve_ivp(
        lambda _t, th: [riding_rate(min(th[0], math.pi / 2), mu)],
        (0.0, arc.duration),
        [arc.theta_start],
        rtol=1e-10,
        atol=1e-12,
        dense_output=True,
    )
    theta = ride.sol(np.clip(local, 0.0, arc.duration))[0]
    return np.clip(theta, arc.theta_start, arc.theta_end)


def solution_summary(solution: TrajectorySolution) -> dict:
    """Plain-data view of a solution for JSON output."""
    phases = []
    elapsed = 0.0
    for phase in solution.phases:
        if isinstance(phase, StraightSegment):
            phases.append(
                {
                    "kind": "straight",
                    "t_start": elapsed,
                    "duration": phase.duration,
                    "psi": phase.psi,
                    "start": list(phase.start.as_tuple()),
                    "end": list(phase.end.as_tuple()),
                }
            )
        else:
            phases.append(
                {
                    "kind": "arc",
                    "t_start": elapsed,
                    "duration": phase.duration,
                    "theta_start": phase.theta_start,
                    "theta_end": phase.theta_end,
                }
            )
        elapsed += phase.duration

    summary: dict = {
        "regime": solution.regime.tag.value,
        "phases": phases,
        "switch_times": list(solution.switch_times),
        "final_state": list(solution.final_state.as_tuple()),
        "final_distance": solution.final_distance,
        "capture_time": solution.capture_time,
        "nonunique": solution.nonunique_flag,
    }
    if solution.entry is not None:
        summary["theta_tan"] = solution.entry.theta_tan
        summary["t_tan"] = solution.entry.t_tan
        summary["theta_exit"] = solution.theta_exit
        summary["remaining_time"] = solution.remaining_time
    return summary


def optional_critical_time(x0: RelState, mu: float) -> Optional[float]:
    """Finite critical time where defined, otherwise None."""
    try:
        t_c = critical_time(x0, mu)
    except DomainError:
        return None
    return t_c if math.isfinite(t_c) else None
