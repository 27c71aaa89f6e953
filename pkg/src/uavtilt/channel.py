"""Path loss for GBS-UAV and GBS-GUE links and correlated shadow fading."""
from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np


@dataclass(frozen=True)
class UavChannelParams:
    fc: float = 1.5  # GHz
    h_uav: float = 100.0  # m

    def __post_init__(self):
        if self.fc <= 0:
            raise ValueError("fc must be positive")
        if not 40.0 <= self.h_uav <= 300.0:
            raise ValueError("h_uav must lie in [40, 300] m for the LOS model")

    @property
    def slope(self) -> float:
        return max(23.9 - 1.8 * math.log10(self.h_uav), 20.0)


def cost231_hata_coefficients(fc_mhz: float, h_gbs: float, h_gue: float, metropolitan: bool = False):
    """(A, B, C) of COST231-Hata with distance in km.

    A folds in the mobile-antenna correction for small/medium cities.
    """
    lf = math.log10(fc_mhz)
    a_hm = (1.1 * lf - 0.7) * h_gue - (1.56 * lf - 0.8)
    a = 46.3 + 33.9 * lf - 13.82 * math.log10(h_gbs) - a_hm
    b = 44.9 - 6.55 * math.log10(h_gbs)
    c = 3.0 if metropolitan else 0.0
    return a, b, c


@dataclass(frozen=True)
class GueChannelParams:
    A: float
    B: float
    C: float = 0.0
    h_gbs: float = 35.0
    h_gue: float = 1.5

    def __post_init__(self):
        if self.B < 0:
            raise ValueError("B must be non-negative")

    @classmethod
    def cost231(cls, fc_ghz: float = 1.5, h_gbs: float = 35.0, h_gue: float = 1.5):
        a, b, c = cost231_hata_coefficients(fc_ghz * 1000.0, h_gbs, h_gue)
        return cls(A=a, B=b, C=c, h_gbs=h_gbs, h_gue=h_gue)


@dataclass(frozen=True)
class ShadowingParams:
    sigma: float
    rho: float = 0.82
    x_c: float = 100.0
    jitter: float = 1e-10

    def __post_init__(self):
        if self.sigma <= 0:
            raise ValueError("sigma must be positive")
        if not 0.0 < self.rho <= 1.0:
            raise ValueError("rho must lie in (0, 1]")
        if self.x_c <= 0:
            raise ValueError("x_c must be positive")

    @classmethod
    def for_height(cls, h_uav: float, **kwargs):
        return cls(sigma=shadow_sigma(h_uav), **kwargs)


def _check_distance(d):
    d = np.asarray(d, dtype=float)
    if np.any(d <= 0):
        raise ValueError("path loss needs a strictly positive distance")
    return d


def uav_path_loss(d, p: UavChannelParams = UavChannelParams(), shadow=0.0):
    """LOS GBS-UAV path loss in dB, ``d`` in meters, ``fc`` in GHz."""
    d = _check_distance(d)
    out = p.slope * np.log10(d) + 20.0 * math.log10(40.0 * math.pi * p.fc / 3.0) + shadow
    return out if np.ndim(out) else float(out)


def gue_path_loss(d, p: GueChannelParams):
    """Hata-form GBS-GUE path loss in dB; ``d`` in meters (converted to km)."""
    d = _check_distance(d)
    out = p.A + p.B * np.log10(d / 1000.0) + p.C
    return out if np.ndim(out) else float(out)


def shadow_sigma(h_uav: float) -> float:
    return 4.2 * math.exp(-0.0046 * h_uav)


def correlation_matrix(waypoints, p: ShadowingParams) -> np.ndarray:
    """Covariance ``sigma^2 rho^(dist/x_c)`` between every pair of waypoints."""
    pts = np.asarray(waypoints, dtype=float)
    if pts.ndim != 2 or len(pts) < 1:
        raise ValueError("need at least one waypoint")
    sep = np.linalg.norm(pts[:, None, :] - pts[None, :, :], axis=-1)
    return p.sigma**2 * p.rho ** (sep / p.x_c)


def shadowing_factor(waypoints, p: ShadowingParams) -> np.ndarray:
    """Lower Cholesky factor of the unit-variance correlation matrix."""
    unit = ShadowingParams(sigma=1.0, rho=p.rho, x_c=p.x_c, jitter=p.jitter)
    corr = correlation_matrix(waypoints, unit)
    try:
        return np.linalg.cholesky(corr)
    except np.linalg.LinAlgError:
        pass
    try:
        return np.linalg.cholesky(corr + p.jitter * np.eye(len(corr)))
    except np.linalg.LinAlgError as exc:
        raise np.linalg.LinAlgError("shadowing correlation matrix is not positive definite") from exc


def sample_correlated_shadowing(waypoints, p: ShadowingParams, rng: np.random.Generator,
                                n_rows: int = 1, factor: np.ndarray | None = None) -> np.ndarray:
    """Draw ``n_rows`` independent correlated shadowing tracks, shape (n_rows, len(waypoints)).

    Unit-variance white noise is colored by the Cholesky factor and scaled by sigma.
    """
    if factor is None:
        factor = shadowing_factor(waypoints, p)
    white = rng.standard_normal((n_rows, factor.shape[0]))
    return p.sigma * white @ factor.T
