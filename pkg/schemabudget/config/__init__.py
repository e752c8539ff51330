"""Configuration for the toolkit."""

from .settings import ExperimentConfig, Settings, load_experiment_config, settings

__all__ = ["ExperimentConfig", "Settings", "load_experiment_config", "settings"]
