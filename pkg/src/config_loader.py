"""
Configuration loading for the Ramanujan operators library
Reads config/ramanujan.yaml and merges it over built-in defaults
"""

import copy
import logging
from pathlib import Path

import yaml

from .errors import RamanujanError

logger = logging.getLogger(__name__)

DEFAULT_CONFIG_PATH = Path(__file__).parent.parent / "config" / "ramanujan.yaml"

DEFAULTS = {
    "tolerances": {
        "oracle_residue": 1e-6,
        "convolution": 1e-9,
        "closed_form": 1e-6,
    },
    "operators": {
        "default_boundary": "replicate",
    },
    "verification": {
        "q_max": 200,
        "signal_length_factor": 8,
        "random_oracle": {
            "count": 200,
            "points_per_q": 16,
            "q_upper": 100000,
            "seed": 20240601,
        },
        "algebra": {
            "coprime_factor_max": 50,
            "multiplicative_pq_max": 2500,
            "shifted_product_pq_max": 600,
        },
        "prime_power_max": 10000,
    },
    "benchmark": {
        "q_list": [1009, 4096, 6561, 510510],
        "samples_per_q": 64,
        "repeats": 3,
    },
    "logging": {
        "level": "WARNING",
        "file": None,
    },
}


def _deep_merge(base, override):
    merged = copy.deepcopy(base)
    for key, value in override.items():
        if isinstance(value, dict) and isinstance(merged.get(key), dict):
            merged[key] = _deep_merge(merged[key], value)
        else:
            merged[key] = value
    return merged


def load_config(path=None):
    """
    Load configuration, falling back to built-in defaults

    Args:
        path (str or Path, optional): YAML file to read. Defaults to config/ramanujan.yaml.
            A missing default file is not an error; a missing explicit file is.

    Returns:
        dict: Configuration with every default key present
    """
    explicit = path is not None
    config_path = Path(path) if explicit else DEFAULT_CONFIG_PATH

    if not config_path.exists():
        if explicit:
            raise RamanujanError(f"Config file not found: {config_path}")
        logger.info(f"No config file at {config_path}, using defaults")
        return copy.deepcopy(DEFAULTS)

    try:
        with open(config_path, "r", encoding="utf-8") as fh:
            loaded = yaml.safe_load(fh) or {}
    except yaml.YAMLError as e:
        raise RamanujanError(f"Malformed config file {config_path}: {e}") from e

    if not isinstance(loaded, dict):
        raise RamanujanError(f"Config file {config_path} must contain a mapping")

    logger.info(f"Loaded configuration from {config_path}")
    return _deep_merge(DEFAULTS, loaded)
