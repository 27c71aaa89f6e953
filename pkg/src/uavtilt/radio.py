"""RSRP, SIR, association and ground-user rate for one network realization."""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .antenna import ArrayConfig, best_sector_gain
from .channel import GueChannelParams, UavChannelParams, gue_path_loss, uav_path_loss
from .geometry import link_angles

THREE_SECTORS = (0.0, 120.0, 240.0)


@dataclass(frozen=True, eq=False)
class Scenario:
    gbs_positions: np.ndarray  # (M, 3)
    gue_positions: np.ndarray  # (K, 3)
    sector_orientations: np.ndarray  # (M, S) boresight azimuths, degrees
    tx_power: float = 46.0  # dBm
    array_config: ArrayConfig = ArrayConfig()
    uav_channel: UavChannelParams = UavChannelParams()
    gue_channel: GueChannelParams = field(default_factory=GueChannelParams.cost231)
    area: tuple[float, float] = (4000.0, 4000.0)
    _cache: dict = field(default_factory=dict, repr=False, compare=False)

    def __post_init__(self):
        gbs = np.atleast_2d(np.asarray(self.gbs_positions, dtype=float))
        gue = np.asarray(self.gue_positions, dtype=float).reshape(-1, 3)
        orient = np.asarray(self.sector_orientations, dtype=float)
        if orient.ndim == 1:
            orient = np.tile(orient, (len(gbs), 1))
        if gbs.shape[1] != 3 or orient.shape[0] != len(gbs):
            raise ValueError("gbs_positions must be (M, 3) with one orientation row per GBS")
        if len(gbs) < 1:
            raise ValueError("need at least one GBS")
        for arr in (gbs, gue):
            if len(arr) and (np.any(arr[:, :2] < 0) or np.any(arr[:, 0] > self.area[0])
                             or np.any(arr[:, 1] > self.area[1]) or np.any(arr[:, 2] < 0)):
                raise ValueError("positions must lie inside the area with z >= 0")
        object.__setattr__(self, "gbs_positions", gbs)
        object.__setattr__(self, "gue_positions", gue)
        object.__setattr__(self, "sector_orientations", orient)

    @property
    def n_gbs(self) -> int:
        return len(self.gbs_positions)

    @property
    def n_gue(self) -> int:
        return len(self.gue_positions)


@dataclass(frozen=True)
class GueAssociation:
    serving: np.ndarray  # (K,) GBS index per GUE
    loads: np.ndarray  # (M,) number of GUEs per GBS
    sir: np.ndarray  # (K,) linear SIR at the serving GBS

    @property
    def members(self) -> list[np.ndarray]:
        return [np.flatnonzero(self.serving == m) for m in range(len(self.loads))]


def rsrp_matrix(scenario: Scenario, points, beta, shadow=0.0) -> np.ndarray:
    """RSRP in dBm from every GBS at every point, shape (P, M).

    ``shadow`` broadcasts against (P, M) and is added to the path loss.
    """
    pts = np.asarray(points, dtype=float).reshape(-1, 3)
    dist, bearing, elev = link_angles(scenario.gbs_positions, pts)
    gain = best_sector_gain(bearing, elev, scenario.sector_orientations, beta, scenario.array_config)
    return scenario.tx_power + gain - uav_path_loss(dist, scenario.uav_channel, shadow)


def rsrp_uav(scenario: Scenario, waypoint, gbs_index: int, beta: float, shadow: float = 0.0) -> float:
    if not 0 <= gbs_index < scenario.n_gbs:
        raise IndexError(f"GBS index {gbs_index} out of range")
    shadows = np.zeros(scenario.n_gbs)
    shadows[gbs_index] = shadow
    return float(rsrp_matrix(scenario, waypoint, beta, shadows)[0, gbs_index])


def serving_cell(scenario: Scenario, waypoint, beta: float, shadow_row=0.0) -> tuple[int, float]:
    """Highest-RSRP GBS at ``waypoint``; ties go to the lowest index."""
    row = rsrp_matrix(scenario, waypoint, beta, np.asarray(shadow_row, dtype=float))[0]
    best = int(np.argmax(row))
    return best, float(row[best])


def gue_received_power(scenario: Scenario, beta: float) -> np.ndarray:
    """Linear received power (mW) at each GUE from each GBS, shape (K, M). Cached per beta."""
    key = ("gue_power", float(beta))
    if key not in scenario._cache:
        dist, bearing, elev = link_angles(scenario.gbs_positions, scenario.gue_positions)
        gain = best_sector_gain(bearing, elev, scenario.sector_orientations, beta, scenario.array_config)
        loss = gue_path_loss(dist, scenario.gue_channel)
        scenario._cache[key] = 10.0 ** ((scenario.tx_power + gain - loss) / 10.0)
    return scenario._cache[key]


def sir_matrix(powers: np.ndarray) -> np.ndarray:
    """SIR of each receiver toward each transmitter, given (K, M) linear powers."""
    powers = np.asarray(powers, dtype=float)
    if powers.shape[-1] < 2:
        raise ValueError("an interference-limited SIR needs at least two transmitters")
    interference = powers.sum(axis=-1, keepdims=True) - powers
    return powers / interference


def gue_sir(scenario: Scenario, gue_index: int, gbs_index: int, beta: float) -> float:
    return float(sir_matrix(gue_received_power(scenario, beta))[gue_index, gbs_index])


def associate_gues(scenario: Scenario, beta: float) -> GueAssociation:
    key = ("assoc", float(beta))
    if key not in scenario._cache:
        if scenario.n_gue == 0:
            assoc = GueAssociation(np.zeros(0, dtype=int), np.zeros(scenario.n_gbs, dtype=int), np.zeros(0))
        else:
            sir = sir_matrix(gue_received_power(scenario, beta))
            serving = np.argmax(sir, axis=1)
            loads = np.bincount(serving, minlength=scenario.n_gbs)
            assoc = GueAssociation(serving, loads, sir[np.arange(len(sir)), serving])
        scenario._cache[key] = assoc
    return scenario._cache[key]


def sum_rate(sir, serving, loads) -> float:
    """Round-robin sum rate: each GUE gets log2(1 + SIR) divided by its cell's load."""
    sir = np.asarray(sir, dtype=float)
    if sir.size == 0:
        return 0.0
    return float(np.sum(np.log2(1.0 + sir) / np.asarray(loads)[np.asarray(serving)]))


def gue_sum_rate(scenario: Scenario, beta: float) -> float:
    assoc = associate_gues(scenario, beta)
    return sum_rate(assoc.sir, assoc.serving, assoc.loads)
