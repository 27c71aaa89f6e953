"""Coordinates, distances and sector-relative angles.

Elevation is measured from the zenith: 0 deg points straight up, 90 deg is the
horizon and 180 deg points straight down.
"""
from __future__ import annotations

import math
from typing import NamedTuple

import numpy as np


class DegenerateGeometryError(ValueError):
    """Raised when a transmitter and receiver coincide."""


class Point3(NamedTuple):
    x: float
    y: float
    z: float = 0.0

    def as_array(self) -> np.ndarray:
        return np.array([self.x, self.y, self.z], dtype=float)


def wrap_degrees(angle):
    """Wrap angles to [-180, 180)."""
    return (np.asarray(angle) + 180.0) % 360.0 - 180.0


def distance3d(a, b) -> float:
    return math.dist(a, b)


def bearing_angles(tx, tx_azimuth: float, rx) -> tuple[float, float]:
    """Azimuth offset from the sector boresight and zenith elevation of ``rx``.

    Directly above or below the transmitter the azimuth is undefined and is
    reported as 0.
    """
    dx, dy, dz = rx[0] - tx[0], rx[1] - tx[1], rx[2] - tx[2]
    horizontal = math.hypot(dx, dy)
    if horizontal == 0.0 and dz == 0.0:
        raise DegenerateGeometryError(f"transmitter and receiver coincide at {tuple(tx)}")
    elevation = math.degrees(math.atan2(horizontal, dz))
    if horizontal == 0.0:
        return 0.0, elevation
    bearing = math.degrees(math.atan2(dy, dx))
    offset = float(wrap_degrees(bearing - tx_azimuth))
    if offset == -180.0:
        offset = 180.0
    return offset, elevation


def link_angles(tx: np.ndarray, rx: np.ndarray):
    """Vectorized link geometry between every receiver and transmitter.

    ``tx`` has shape (M, 3) and ``rx`` shape (P, 3). Returns the (P, M)
    arrays ``distance``, ``bearing`` (absolute, degrees from +x) and
    ``elevation`` (degrees from zenith).
    """
    delta = rx[:, None, :] - tx[None, :, :]
    horizontal = np.hypot(delta[..., 0], delta[..., 1])
    distance = np.hypot(horizontal, delta[..., 2])
    if np.any(distance == 0.0):
        raise DegenerateGeometryError("a receiver coincides with a transmitter")
    bearing = np.degrees(np.arctan2(delta[..., 1], delta[..., 0]))
    elevation = np.degrees(np.arctan2(horizontal, delta[..., 2]))
    return distance, bearing, elevation
