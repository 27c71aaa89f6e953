"""Linear UAV trajectories and the A3 / time-to-trigger handover machine."""
from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .radio import Scenario, rsrp_matrix


@dataclass(frozen=True, eq=False)
class Trajectory:
    waypoints: np.ndarray  # (delta, 3)
    speed: float  # km/h
    gap: float  # s
    duration: float  # s
    heading: float = 0.0  # degrees from +x

    @property
    def n_waypoints(self) -> int:
        return len(self.waypoints)

    @property
    def spacing(self) -> float:
        return self.speed / 3.6 * self.gap

    @property
    def direction(self) -> np.ndarray:
        h = math.radians(self.heading)
        return np.array([math.cos(h), math.sin(h), 0.0])

    def position_after(self, s: int, seconds: float) -> np.ndarray:
        """Position ``seconds`` of flight past waypoint ``s``."""
        return self.waypoints[s] + self.direction * (self.speed / 3.6 * seconds)


def n_segments(duration: float, gap: float) -> int:
    ratio = duration / gap
    count = round(ratio)
    if count < 1 or not math.isclose(ratio, count, rel_tol=1e-9, abs_tol=1e-9):
        raise ValueError(f"duration/gap = {ratio} is not a positive integer")
    return count


def build_linear_trajectory(start, heading: float, speed: float, gap: float, duration: float,
                            area: tuple[float, float] | None = None) -> Trajectory:
    """``duration / gap`` equally spaced waypoints at constant altitude."""
    if speed <= 0 or gap <= 0 or duration <= 0:
        raise ValueError("speed, gap and duration must be positive")
    delta = n_segments(duration, gap)
    h = math.radians(heading)
    step = speed / 3.6 * gap
    idx = np.arange(delta)[:, None]
    start = np.asarray(start, dtype=float)
    pts = start + idx * step * np.array([math.cos(h), math.sin(h), 0.0])
    if area is not None:
        tol = 1e-9
        if (np.any(pts[:, :2] < -tol) or np.any(pts[:, 0] > area[0] + tol)
                or np.any(pts[:, 1] > area[1] + tol)):
            raise ValueError("trajectory leaves the simulation area")
    return Trajectory(pts, speed, gap, duration, heading)


@dataclass(frozen=True)
class HandoverConfig:
    hom: float = 3.0  # dB
    ttt: float = 0.16  # s
    freeze_first_step: bool = False

    def __post_init__(self):
        if self.ttt < 0:
            raise ValueError("ttt must be non-negative")


@dataclass(frozen=True)
class HoEvent:
    waypoint: int
    source: int
    target: int


@dataclass
class FlightResult:
    serving_sequence: np.ndarray
    rsrp_trace: np.ndarray
    beta_trace: np.ndarray
    ho_events: list[HoEvent] = field(default_factory=list)

    @property
    def ho_count(self) -> int:
        return len(self.ho_events)


def a3_triggered(rsrp_target: float, rsrp_serving: float, hom: float) -> bool:
    return rsrp_target > rsrp_serving + hom


def step_handover(scenario: Scenario, trajectory: Trajectory, current: int, s: int, beta: float,
                  shadow_col, cfg: HandoverConfig, rsrp_row=None) -> tuple[int, HoEvent | None]:
    """Run the two-stage A3 check at waypoint ``s``.

    The strongest neighbour must beat the serving cell by the margin both at
    the waypoint and again ``ttt`` seconds later. Shadowing at the later
    point reuses waypoint ``s``'s values. ``rsrp_row`` may carry precomputed
    RSRPs at the waypoint.
    """
    if s < 1:
        raise ValueError("handover steps start at waypoint 1")
    shadow_col = np.broadcast_to(np.asarray(shadow_col, dtype=float), (scenario.n_gbs,))
    if rsrp_row is None:
        rsrp_row = rsrp_matrix(scenario, trajectory.waypoints[s], beta, shadow_col)[0]
    if scenario.n_gbs < 2:
        return current, None
    others = np.array(rsrp_row, dtype=float)
    others[current] = -np.inf
    candidate = int(np.argmax(others))
    if not a3_triggered(rsrp_row[candidate], rsrp_row[current], cfg.hom):
        return current, None
    later = rsrp_matrix(scenario, trajectory.position_after(s, cfg.ttt), beta, shadow_col)[0]
    if a3_triggered(later[candidate], later[current], cfg.hom):
        return candidate, HoEvent(s, current, candidate)
    return current, None


def simulate_flight(scenario: Scenario, trajectory: Trajectory, beta_sequence, shadow_matrix,
                    cfg: HandoverConfig = HandoverConfig()) -> FlightResult:
    """Fly the trajectory with a per-waypoint tilt sequence and count handovers.

    ``shadow_matrix`` has shape (M, delta) in dB, or is a scalar.
    """
    betas = np.asarray(beta_sequence, dtype=float)
    delta = trajectory.n_waypoints
    if betas.shape != (delta,):
        raise ValueError(f"beta_sequence has length {betas.size}, expected {delta}")
    shadow = np.broadcast_to(np.asarray(shadow_matrix, dtype=float), (scenario.n_gbs, delta))

    rsrp = np.empty((delta, scenario.n_gbs))
    for beta in np.unique(betas):
        rows = np.flatnonzero(betas == beta)
        rsrp[rows] = rsrp_matrix(scenario, trajectory.waypoints[rows], beta, shadow[:, rows].T)

    serving = np.empty(delta, dtype=int)
    serving[0] = int(np.argmax(rsrp[0]))
    events = []
    for s in range(1, delta):
        current = serving[s - 1]
        if not (cfg.freeze_first_step and s == 1):
            current, event = step_handover(scenario, trajectory, current, s, betas[s],
                                           shadow[:, s], cfg, rsrp_row=rsrp[s])
            if event is not None:
                events.append(event)
        serving[s] = current
    trace = rsrp[np.arange(delta), serving]
    return FlightResult(serving, trace, betas.copy(), events)
