"""Experiment configuration: JSON presets, strict loading, validation."""
from __future__ import annotations

import dataclasses
import json
import typing
from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path

from ..antenna import ArrayConfig
from ..channel import GueChannelParams, ShadowingParams, UavChannelParams
from ..mobility import HandoverConfig, n_segments
from ..rl import ExplorationSchedule, RewardWeights

PRESETS = ("paper", "desk")
PAPER_WEIGHTS = ((0.0, 1.0), (0.1, 0.9), (0.2, 0.8), (0.3, 0.7), (1.0, 0.0))


class ConfigError(ValueError):
    pass


@dataclass
class TrajectoryConfig:
    speed: float = 120.0  # km/h
    gap: float = 0.2  # s
    duration: float = 120.0  # s
    start: list[float] | None = None  # [x, y]; None centers the line in the area
    heading: float = 0.0


@dataclass
class ShadowingConfig:
    enabled: bool = True
    rho: float = 0.82
    x_c: float = 100.0
    jitter: float = 1e-10


@dataclass
class LearningConfig:
    alpha: float = 0.8
    discount: float = 0.9
    epsilon: float = 1.0
    decay: float = 0.99
    epsilon_min: float = 0.01


@dataclass
class HataConfig:
    A: float | None = None
    B: float | None = None
    C: float | None = None


@dataclass
class ExperimentConfig:
    seed: int = 0
    realizations: int = 100
    iterations: int = 1500
    weights: list[list[float]] = field(default_factory=lambda: [list(w) for w in PAPER_WEIGHTS])
    baseline_beta: float = 6.0
    area: list[float] = field(default_factory=lambda: [4000.0, 4000.0])
    n_gbs: int = 64
    n_gue: int = 320
    tx_power: float = 46.0
    h_gbs: float = 35.0
    h_gue: float = 1.5
    h_uav: float = 100.0
    fc: float = 1.5
    trajectory: TrajectoryConfig = field(default_factory=TrajectoryConfig)
    antenna: ArrayConfig = field(default_factory=ArrayConfig)
    shadowing: ShadowingConfig = field(default_factory=ShadowingConfig)
    handover: HandoverConfig = field(default_factory=HandoverConfig)
    learning: LearningConfig = field(default_factory=LearningConfig)
    gue_pathloss: HataConfig = field(default_factory=HataConfig)

    def validate(self) -> "ExperimentConfig":
        if self.realizations < 1:
            raise ConfigError("realizations must be >= 1")
        if self.iterations < 1:
            raise ConfigError("iterations must be >= 1")
        if self.n_gbs < 1 or self.n_gue < 0:
            raise ConfigError("need n_gbs >= 1 and n_gue >= 0")
        if len(self.area) != 2 or min(self.area) <= 0:
            raise ConfigError("area must be [width, height] in meters")
        try:
            self.reward_weights()
            self.uav_channel()
            self.exploration()
            n_segments(self.trajectory.duration, self.trajectory.gap)
        except ValueError as exc:
            raise ConfigError(str(exc)) from exc
        return self

    def reward_weights(self) -> list[RewardWeights]:
        out = []
        for w in self.weights:
            if len(w) != 2:
                raise ConfigError(f"weight vector {w} must have two entries")
            out.append(RewardWeights(float(w[0]), float(w[1])))
        return out

    def uav_channel(self) -> UavChannelParams:
        return UavChannelParams(fc=self.fc, h_uav=self.h_uav)

    def gue_channel(self) -> GueChannelParams:
        base = GueChannelParams.cost231(self.fc, self.h_gbs, self.h_gue)
        over = {k: v for k, v in dataclasses.asdict(self.gue_pathloss).items() if v is not None}
        return dataclasses.replace(base, **over)

    def shadowing_params(self) -> ShadowingParams:
        s = self.shadowing
        return ShadowingParams.for_height(self.h_uav, rho=s.rho, x_c=s.x_c, jitter=s.jitter)

    def exploration(self) -> ExplorationSchedule:
        lc = self.learning
        return ExplorationSchedule(lc.epsilon, lc.decay, lc.epsilon_min)

    def to_dict(self) -> dict:
        return dataclasses.asdict(self)


def _build(cls, data: dict, where: str):
    if not isinstance(data, dict):
        raise ConfigError(f"{where or 'config'} must be a JSON object")
    hints = typing.get_type_hints(cls)
    names = {f.name for f in dataclasses.fields(cls)}
    unknown = sorted(set(data) - names)
    if unknown:
        raise ConfigError(f"unknown key(s) in {where or 'config'}: {', '.join(unknown)}")
    kwargs = {}
    for key, value in data.items():
        hint = hints[key]
        if dataclasses.is_dataclass(hint):
            kwargs[key] = _build(hint, value, f"{where}.{key}" if where else key)
        else:
            kwargs[key] = value
    try:
        return cls(**kwargs)
    except (TypeError, ValueError) as exc:
        raise ConfigError(f"{where or 'config'}: {exc}") from exc


def _merge(base: dict, override: dict) -> dict:
    out = dict(base)
    for key, value in override.items():
        if isinstance(value, dict) and isinstance(out.get(key), dict):
            out[key] = _merge(out[key], value)
        else:
            out[key] = value
    return out


def preset_dict(name: str) -> dict:
    if name not in PRESETS:
        raise ConfigError(f"unknown preset {name!r}; choose from {', '.join(PRESETS)}")
    text = resources.files("uavtilt.presets").joinpath(f"{name}.json").read_text(encoding="utf-8")
    return json.loads(text)


def config_from_dict(data: dict) -> ExperimentConfig:
    return _build(ExperimentConfig, data, "").validate()


def load_config(path: str | Path | None = None, preset: str | None = None, **overrides) -> ExperimentConfig:
    """Layer defaults, an optional preset, an optional JSON file and keyword overrides."""
    data: dict = preset_dict(preset) if preset else {}
    if path is not None:
        try:
            file_data = json.loads(Path(path).read_text(encoding="utf-8"))
        except OSError as exc:
            raise ConfigError(f"cannot read config {path}: {exc}") from exc
        except json.JSONDecodeError as exc:
            raise ConfigError(f"{path} is not valid JSON: {exc}") from exc
        if not isinstance(file_data, dict):
            raise ConfigError(f"{path} must contain a JSON object")
        data = _merge(data, file_data)
    data = _merge(data, {k: v for k, v in overrides.items() if v is not None})
    return config_from_dict(data)
