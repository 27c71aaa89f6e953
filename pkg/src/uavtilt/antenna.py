"""3GPP sector element pattern with an electrically tilted vertical array.

The element follows the usual 3GPP parabolic cuts. Each sector stacks
``n_elements`` of them vertically, and the phase progression steers the
mainlobe to zenith angle ``90 + beta``.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .geometry import wrap_degrees

TILT_GRID = (-2, 0, 2, 4, 6, 8, 10, 12)


@dataclass(frozen=True)
class ArrayConfig:
    n_elements: int = 8
    element_spacing: float = 0.5  # wavelengths
    max_element_gain: float = 8.0  # dBi
    theta_3db: float = 65.0
    phi_3db: float = 65.0
    sla_v: float = 30.0
    a_max: float = 30.0

    def __post_init__(self):
        if self.n_elements < 1:
            raise ValueError("n_elements must be >= 1")
        for name in ("max_element_gain", "sla_v", "a_max"):
            if getattr(self, name) < 0:
                raise ValueError(f"{name} must be non-negative")
        if self.theta_3db <= 0 or self.phi_3db <= 0 or self.element_spacing <= 0:
            raise ValueError("beamwidths and element spacing must be positive")


def element_gain(azimuth_offset, elevation, cfg: ArrayConfig = ArrayConfig()):
    """Element gain in dBi; accepts scalars or broadcastable arrays."""
    phi = wrap_degrees(azimuth_offset)
    vertical = -np.minimum(12.0 * ((np.asarray(elevation) - 90.0) / cfg.theta_3db) ** 2, cfg.sla_v)
    horizontal = -np.minimum(12.0 * (phi / cfg.phi_3db) ** 2, cfg.a_max)
    gain = cfg.max_element_gain - np.minimum(-(vertical + horizontal), cfg.a_max)
    return gain if np.ndim(gain) else float(gain)


def array_factor_db(elevation, beta, cfg: ArrayConfig = ArrayConfig()):
    """``20 log10 |AF|`` of the steered vertical array.

    Nulls are floored at ``-a_max`` dB so downstream dB arithmetic stays finite.
    """
    theta = np.radians(np.asarray(elevation, dtype=float))
    steer = np.radians(90.0 + np.asarray(beta, dtype=float))
    psi = 2.0 * np.pi * cfg.element_spacing * (np.cos(theta) - np.cos(steer))
    k = np.arange(cfg.n_elements)
    af = np.abs(np.exp(1j * np.multiply.outer(psi, k)).sum(axis=-1))
    floor = 10.0 ** (-cfg.a_max / 20.0)
    out = 20.0 * np.log10(np.maximum(af, floor))
    return out if np.ndim(out) else float(out)


def array_gain(azimuth_offset, elevation, beta, cfg: ArrayConfig = ArrayConfig()):
    """Total sector gain in dBi toward (azimuth_offset, elevation) at downtilt ``beta``."""
    return element_gain(azimuth_offset, elevation, cfg) + array_factor_db(elevation, beta, cfg)


def best_sector_gain(bearing, elevation, orientations, beta, cfg: ArrayConfig = ArrayConfig()):
    """Maximum array gain over a GBS's sectors.

    ``bearing`` and ``elevation`` have shape (P, M), ``orientations`` shape
    (M, S). Returns shape (P, M).
    """
    bearing = np.asarray(bearing, dtype=float)
    offsets = bearing[..., None] - np.asarray(orientations, dtype=float)[None, ...]
    elev = np.asarray(elevation, dtype=float)
    # the array factor does not depend on azimuth: evaluate it once per link
    gain = element_gain(offsets, elev[..., None], cfg).max(axis=-1)
    return gain + array_factor_db(elev, beta, cfg)
