"""Downlink tilt control for a cellular-connected UAV: simulator and Q-learning controller."""

__version__ = "0.1.0"
