"""Tabular Q-learning over the waypoint chain of a fixed trajectory.

States are waypoints visited in order and actions index ``TILT_GRID``. The
chain is deterministic (s -> s + 1 whatever the action), so the optimal
action values follow from one backward pass (:func:`optimal_q_oracle`).
"""
from __future__ import annotations

import csv
from dataclasses import dataclass, field

import numpy as np

from .antenna import TILT_GRID
from .radio import Scenario, gue_sum_rate, rsrp_matrix

N_ACTIONS = len(TILT_GRID)


@dataclass(frozen=True)
class RewardWeights:
    w_rate: float
    w_rsrp: float

    def __post_init__(self):
        if self.w_rate < 0 or self.w_rsrp < 0 or abs(self.w_rate + self.w_rsrp - 1.0) > 1e-9:
            raise ValueError(f"weights must be non-negative and sum to 1, got {self}")

    @property
    def label(self) -> str:
        return f"{self.w_rate:g}:{self.w_rsrp:g}"


@dataclass(frozen=True)
class ExplorationSchedule:
    epsilon: float = 1.0
    decay: float = 0.99
    epsilon_min: float = 0.01

    def __post_init__(self):
        if not (0.0 <= self.epsilon_min <= 1.0 and 0.0 <= self.epsilon <= 1.0):
            raise ValueError("epsilon values must lie in [0, 1]")
        if not 0.0 < self.decay <= 1.0:
            raise ValueError("decay must lie in (0, 1]")

    def epsilon_at(self, k: int) -> float:
        """Exploration rate in effect during iteration ``k`` (1-based; decayed before the episode)."""
        return max(self.epsilon_min, self.epsilon * self.decay**k)


@dataclass
class QTable:
    values: np.ndarray
    alpha: float = 0.8
    discount: float = 0.9

    @classmethod
    def zeros(cls, n_states: int, alpha: float = 0.8, discount: float = 0.9, n_actions: int = N_ACTIONS):
        if not 0.0 <= alpha <= 1.0 or not 0.0 <= discount < 1.0:
            raise ValueError("need alpha in [0, 1] and discount in [0, 1)")
        return cls(np.zeros((n_states, n_actions)), alpha, discount)

    @property
    def n_states(self) -> int:
        return self.values.shape[0]

    def to_csv(self, path) -> None:
        with open(path, "w", newline="", encoding="utf-8") as fh:
            writer = csv.writer(fh, lineterminator="\n")
            writer.writerow(["state"] + [f"beta_{b}" for b in TILT_GRID[: self.values.shape[1]]])
            for s, row in enumerate(self.values):
                writer.writerow([s] + [f"{v:.6f}" for v in row])


def minmax(values) -> np.ndarray:
    """Affine map of ``values`` onto [0, 1]; a constant input maps to 0.5."""
    values = np.asarray(values, dtype=float)
    lo, hi = values.min(), values.max()
    if hi == lo:
        return np.full_like(values, 0.5)
    return (values - lo) / (hi - lo)


@dataclass(frozen=True, eq=False)
class NormalizedTables:
    rsrp_norm: np.ndarray  # (delta, A)
    rate_norm: np.ndarray  # (A,)
    rsrp_raw: np.ndarray | None = field(default=None, repr=False)
    rate_raw: np.ndarray | None = field(default=None, repr=False)

    @classmethod
    def from_raw(cls, rsrp_raw, rate_raw):
        rsrp_raw = np.asarray(rsrp_raw, dtype=float)
        rate_raw = np.asarray(rate_raw, dtype=float)
        return cls(minmax(rsrp_raw), minmax(rate_raw), rsrp_raw, rate_raw)

    @property
    def n_states(self) -> int:
        return self.rsrp_norm.shape[0]


def precompute_tables(scenario: Scenario, trajectory, shadow_matrix, tilts=TILT_GRID) -> NormalizedTables:
    """Serving-cell RSRP per (waypoint, tilt) and GUE sum rate per tilt, min-max normalized."""
    shadow = np.broadcast_to(np.asarray(shadow_matrix, dtype=float), (scenario.n_gbs, trajectory.n_waypoints))
    rsrp = np.column_stack([
        rsrp_matrix(scenario, trajectory.waypoints, beta, shadow.T).max(axis=1) for beta in tilts
    ])
    rates = np.array([gue_sum_rate(scenario, beta) for beta in tilts])
    return NormalizedTables.from_raw(rsrp, rates)


def reward_matrix(tables: NormalizedTables, weights: RewardWeights) -> np.ndarray:
    """Reward for every (state, action); values come from the following state.

    The final waypoint has no successor and scores with its own values.
    """
    nxt = np.vstack([tables.rsrp_norm[1:], tables.rsrp_norm[-1:]])
    return weights.w_rate * tables.rate_norm[None, :] + weights.w_rsrp * nxt


def reward(tables: NormalizedTables, s: int, a: int, weights: RewardWeights) -> float:
    s_next = min(s + 1, tables.n_states - 1)
    return float(weights.w_rate * tables.rate_norm[a] + weights.w_rsrp * tables.rsrp_norm[s_next, a])


def q_update(q: QTable, s: int, a: int, r: float, s_next: int | None) -> QTable:
    """One Q-learning step in place; ``s_next=None`` marks a terminal transition."""
    future = 0.0 if s_next is None or s_next >= q.n_states else q.values[s_next].max()
    q.values[s, a] = (1.0 - q.alpha) * q.values[s, a] + q.alpha * (r + q.discount * future)
    return q


def greedy_action(row) -> int:
    return int(np.argmax(row))


def epsilon_greedy_action(q: QTable, s: int, epsilon: float, rng: np.random.Generator) -> int:
    explore = rng.random() < epsilon
    random_action = int(rng.integers(q.values.shape[1]))
    return random_action if explore else greedy_action(q.values[s])


def train(tables: NormalizedTables, weights: RewardWeights, iterations: int, rng: np.random.Generator,
          alpha: float = 0.8, discount: float = 0.9,
          schedule: ExplorationSchedule = ExplorationSchedule(), q: QTable | None = None) -> QTable:
    """Epsilon-greedy Q-learning, one full pass over the trajectory per iteration.

    Each step only writes row ``s`` and reads row ``s + 1``, which is still
    untouched in that episode, so an episode is applied as one vectorized
    update. The result is identical to stepping state by state with the
    same random draws.
    """
    if iterations < 1:
        raise ValueError("iterations must be >= 1")
    rewards = reward_matrix(tables, weights)
    delta, n_actions = rewards.shape
    if q is None:
        q = QTable.zeros(delta, alpha, discount, n_actions)
    states = np.arange(delta)
    for k in range(1, iterations + 1):
        eps = schedule.epsilon_at(k)
        u = rng.random(delta)
        random_actions = rng.integers(n_actions, size=delta)
        actions = np.where(u < eps, random_actions, np.argmax(q.values, axis=1))
        future = np.append(q.values[1:].max(axis=1), 0.0)
        target = rewards[states, actions] + q.discount * future
        q.values[states, actions] = (1.0 - q.alpha) * q.values[states, actions] + q.alpha * target
    return q


def greedy_policy(q) -> np.ndarray:
    values = q.values if isinstance(q, QTable) else np.asarray(q)
    return np.argmax(values, axis=1)


def optimal_q_oracle(tables: NormalizedTables, weights: RewardWeights, discount: float = 0.9) -> np.ndarray:
    """Exact optimal action values by backward induction along the chain."""
    rewards = reward_matrix(tables, weights)
    q = np.empty_like(rewards)
    q[-1] = rewards[-1]
    for s in range(len(rewards) - 2, -1, -1):
        q[s] = rewards[s] + discount * q[s + 1].max()
    return q


def policy_tilts(actions) -> np.ndarray:
    return np.asarray(TILT_GRID, dtype=float)[np.asarray(actions)]
