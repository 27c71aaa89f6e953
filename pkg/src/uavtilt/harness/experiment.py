"""Monte-Carlo realizations, baseline comparison and aggregation."""
from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from ..antenna import TILT_GRID
from ..channel import sample_correlated_shadowing, shadowing_factor
from ..mobility import Trajectory, build_linear_trajectory, simulate_flight
from ..radio import THREE_SECTORS, Scenario, gue_sum_rate
from ..rl import NormalizedTables, greedy_policy, policy_tilts, precompute_tables, train
from .config import ExperimentConfig
from .streams import stream


@dataclass
class FlightMetrics:
    ho_count: int
    mean_beta: float
    mean_rate: float
    rsrp_trace: np.ndarray


@dataclass
class RealizationResult:
    index: int
    schemes: dict[str, FlightMetrics]  # keyed by weight label
    baseline: FlightMetrics


@dataclass
class SchemeSummary:
    label: str
    w_rate: float | None
    w_rsrp: float | None
    mean_ho: float
    mean_beta: float
    mean_rate: float
    rsrp_samples: np.ndarray = field(repr=False)

    @property
    def rsrp_p5(self) -> float:
        return fifth_percentile(self.rsrp_samples)


@dataclass
class AggregateReport:
    schemes: list[SchemeSummary]
    baseline: SchemeSummary
    n_realizations: int

    def scheme(self, label: str) -> SchemeSummary:
        for s in self.schemes:
            if s.label == label:
                return s
        raise KeyError(label)


def generate_scenario(config: ExperimentConfig, index: int) -> Scenario:
    rng = stream(config.seed, "scenario", index)
    width, height = config.area
    gbs = np.column_stack([
        rng.uniform(0.0, width, config.n_gbs),
        rng.uniform(0.0, height, config.n_gbs),
        np.full(config.n_gbs, config.h_gbs),
    ])
    gue = np.column_stack([
        rng.uniform(0.0, width, config.n_gue),
        rng.uniform(0.0, height, config.n_gue),
        np.full(config.n_gue, config.h_gue),
    ])
    return Scenario(
        gbs_positions=gbs,
        gue_positions=gue,
        sector_orientations=np.tile(THREE_SECTORS, (config.n_gbs, 1)),
        tx_power=config.tx_power,
        array_config=config.antenna,
        uav_channel=config.uav_channel(),
        gue_channel=config.gue_channel(),
        area=(float(width), float(height)),
    )


def build_trajectory(config: ExperimentConfig) -> Trajectory:
    """The flight path shared by every realization."""
    tc = config.trajectory
    width, height = config.area
    if tc.start is None:
        delta = round(tc.duration / tc.gap)
        span = (delta - 1) * tc.speed / 3.6 * tc.gap
        h = np.radians(tc.heading)
        direction = np.array([np.cos(h), np.sin(h)])
        start_xy = np.array([width / 2.0, height / 2.0]) - direction * span / 2.0
    else:
        start_xy = np.asarray(tc.start, dtype=float)
    start = (float(start_xy[0]), float(start_xy[1]), config.h_uav)
    return build_linear_trajectory(start, tc.heading, tc.speed, tc.gap, tc.duration, area=tuple(config.area))


def sample_shadowing(config: ExperimentConfig, trajectory: Trajectory, index: int) -> np.ndarray:
    """Per-GBS correlated shadowing along the trajectory, shape (M, delta)."""
    if not config.shadowing.enabled:
        return np.zeros((config.n_gbs, trajectory.n_waypoints))
    params = config.shadowing_params()
    factor = shadowing_factor(trajectory.waypoints, params)
    return sample_correlated_shadowing(trajectory.waypoints, params, stream(config.seed, "shadowing", index),
                                       n_rows=config.n_gbs, factor=factor)


def _flight_metrics(scenario, trajectory, betas, shadow, config, rates_by_beta) -> FlightMetrics:
    flight = simulate_flight(scenario, trajectory, betas, shadow, config.handover)
    return FlightMetrics(
        ho_count=flight.ho_count,
        mean_beta=float(np.mean(betas)),
        mean_rate=float(np.mean([rates_by_beta[b] for b in betas])),
        rsrp_trace=flight.rsrp_trace,
    )


def run_realization(config: ExperimentConfig, index: int) -> RealizationResult:
    scenario = generate_scenario(config, index)
    trajectory = build_trajectory(config)
    shadow = sample_shadowing(config, trajectory, index)
    tables: NormalizedTables = precompute_tables(scenario, trajectory, shadow)
    rates = dict(zip((float(b) for b in TILT_GRID), tables.rate_raw))
    baseline_beta = float(config.baseline_beta)
    if baseline_beta not in rates:
        rates[baseline_beta] = gue_sum_rate(scenario, baseline_beta)

    lc = config.learning
    schemes = {}
    for weights in config.reward_weights():
        q = train(tables, weights, config.iterations, stream(config.seed, f"train:{weights.label}", index),
                  alpha=lc.alpha, discount=lc.discount, schedule=config.exploration())
        betas = policy_tilts(greedy_policy(q))
        schemes[weights.label] = _flight_metrics(scenario, trajectory, betas, shadow, config, rates)

    fixed = np.full(trajectory.n_waypoints, baseline_beta)
    baseline = _flight_metrics(scenario, trajectory, fixed, shadow, config, rates)
    return RealizationResult(index, schemes, baseline)


def _run_indexed(args):
    config, index = args
    return run_realization(config, index)


def run_experiment(config: ExperimentConfig, workers: int = 1) -> list[RealizationResult]:
    """All realizations in index order; ``workers > 1`` runs them in processes."""
    jobs = [(config, i) for i in range(config.realizations)]
    if workers <= 1:
        return [_run_indexed(job) for job in jobs]
    with ProcessPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(_run_indexed, jobs))


def fifth_percentile(samples) -> float:
    return float(np.percentile(np.asarray(samples, dtype=float), 5.0))


def _summarize(label, w, metrics: list[FlightMetrics]) -> SchemeSummary:
    pooled = np.sort(np.concatenate([m.rsrp_trace for m in metrics]))
    return SchemeSummary(
        label=label,
        w_rate=None if w is None else w.w_rate,
        w_rsrp=None if w is None else w.w_rsrp,
        mean_ho=float(np.mean([m.ho_count for m in metrics])),
        mean_beta=float(np.mean([m.mean_beta for m in metrics])),
        mean_rate=float(np.mean([m.mean_rate for m in metrics])),
        rsrp_samples=pooled,
    )


def aggregate(results: list[RealizationResult], config: ExperimentConfig) -> AggregateReport:
    if not results:
        raise ValueError("aggregate needs at least one realization")
    results = sorted(results, key=lambda r: r.index)
    schemes = [
        _summarize(w.label, w, [r.schemes[w.label] for r in results]) for w in config.reward_weights()
    ]
    baseline = _summarize("baseline", None, [r.baseline for r in results])
    return AggregateReport(schemes, baseline, len(results))
