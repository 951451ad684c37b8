"""
Configuration management for vconn-oracle.
"""
import os
import yaml
import logging
from typing import Any, Dict, Optional

logger = logging.getLogger(__name__)

# Default configuration path
CONFIG_DIR = os.path.expanduser("~/.vconn_oracle")
CONFIG_PATH = os.path.join(CONFIG_DIR, "config.yaml")

# Default configuration values
DEFAULT_CONFIG = {
    "verify_max_nodes": 300,       # kconn builds check k-connectivity up to this n
    "enumeration_max_nodes": 12,   # exhaustive brute force budget
    "workers": 1,
    "bench_pairs": 100000,
    "bench_seed": 0,
    "gnp_max_attempts": 100,
    "log_level": "INFO",
}

# Smallest accepted value of each integer setting
MINIMUMS = {
    "verify_max_nodes": 0,
    "enumeration_max_nodes": 0,
    "workers": 1,
    "bench_pairs": 1,
    "bench_seed": 0,
    "gnp_max_attempts": 1,
}

LOG_LEVELS = ("DEBUG", "INFO", "WARNING", "ERROR", "CRITICAL")


def _validated(config: Dict[str, Any], config_path: str) -> Dict[str, Any]:
    """Replace out-of-range or mistyped settings with their defaults."""
    for key, minimum in MINIMUMS.items():
        value = config[key]
        if isinstance(value, bool) or not isinstance(value, int) or value < minimum:
            logger.warning(
                f"{config_path}: {key} must be an integer >= {minimum}, got {value!r}; "
                f"using {DEFAULT_CONFIG[key]}"
            )
            config[key] = DEFAULT_CONFIG[key]

    level = str(config["log_level"]).upper()
    if level not in LOG_LEVELS:
        logger.warning(f"{config_path}: unknown log_level {config['log_level']!r}; using INFO")
        level = "INFO"
    config["log_level"] = level
    return config


def load_config(config_path: Optional[str] = None) -> Dict[str, Any]:
    """
    Load configuration from file.

    Args:
        config_path: Path to configuration file (optional)

    Returns:
        Configuration dictionary
    """
    if config_path is None:
        config_path = CONFIG_PATH

    # Ensure directory exists
    os.makedirs(os.path.dirname(os.path.abspath(config_path)), exist_ok=True)

    # If config doesn't exist, create with defaults
    if not os.path.exists(config_path):
        save_config(DEFAULT_CONFIG, config_path)
        return DEFAULT_CONFIG.copy()

    try:
        with open(config_path, "r") as f:
            config = yaml.safe_load(f)

        if config is None:
            return DEFAULT_CONFIG.copy()

        if not isinstance(config, dict):
            raise ValueError(f"expected a mapping, got {type(config).__name__}")

        # Fill in keys added since the file was written
        for key, value in DEFAULT_CONFIG.items():
            if key not in config:
                config[key] = value

        return _validated(config, config_path)

    except Exception as e:
        logger.error(f"Error loading config from {config_path}: {e}")
        return DEFAULT_CONFIG.copy()


def save_config(config: Dict[str, Any], config_path: Optional[str] = None) -> None:
    """
    Save configuration to file.

    Args:
        config: Configuration dictionary
        config_path: Path to configuration file (optional)
    """
    if config_path is None:
        config_path = CONFIG_PATH

    os.makedirs(os.path.dirname(os.path.abspath(config_path)), exist_ok=True)

    try:
        with open(config_path, "w") as f:
            yaml.dump(config, f, default_flow_style=False)

        logger.info(f"Configuration saved to {config_path}")

    except Exception as e:
        logger.error(f"Error saving config to {config_path}: {e}")

