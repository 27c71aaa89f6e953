from .config import ConfigError, ExperimentConfig, load_config
from .experiment import aggregate, generate_scenario, run_experiment, run_realization
from .reports import emit_reports

__all__ = [
    "ConfigError",
    "ExperimentConfig",
    "aggregate",
    "emit_reports",
    "generate_scenario",
    "load_config",
    "run_experiment",
    "run_realization",
]
