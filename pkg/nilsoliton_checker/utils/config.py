"""Configuration management"""

import copy
import logging
import os
from typing import Any, Dict, Optional

import yaml

from nilsoliton_checker.utils.validation import ValidationError, parse_positive_rational, validate_max_k

logger = logging.getLogger("nilsoliton_checker")

VALID_LOG_LEVELS = ["DEBUG", "INFO", "WARNING", "ERROR", "CRITICAL"]
VALID_FORMATS = ["text", "json"]


def expand_path(path: str) -> str:
    """Expand user home directory and environment variables in path"""
    return os.path.expanduser(os.path.expandvars(path))


class Config:
    """Configuration manager"""

    def __init__(self, config_path: Optional[str] = None):
        self.config_path = config_path or self._find_config_file()
        self._config: Dict[str, Any] = {}
        self.load()

    def _find_config_file(self) -> str:
        """Find config file in standard locations"""
        if os.path.exists("config.yaml"):
            return "config.yaml"
        home_config = expand_path("~/.nilsoliton_checker/config.yaml")
        if os.path.exists(home_config):
            return home_config
        return "config.yaml"

    def load(self):
        """Load configuration from file"""
        user_config: Dict[str, Any] = {}
        if os.path.exists(self.config_path):
            try:
                with open(self.config_path, 'r', encoding='utf-8') as f:
                    loaded = yaml.safe_load(f) or {}
                if isinstance(loaded, dict):
                    user_config = loaded
                else:
                    logger.warning(f"Config file {self.config_path} is not a mapping. Using defaults.")
            except (yaml.YAMLError, IOError, OSError) as e:
                logger.warning(f"Error loading config file {self.config_path}: {e}. Using defaults.")

        self._config = self._merge_config(self._get_defaults(), user_config)
        self._validate_config()

    @staticmethod
    def _get_defaults() -> Dict[str, Any]:
        """Get default configuration"""
        return {
            "logging": {
                "level": "WARNING",
                "file": None,
                "max_file_size_mb": 10,
                "backup_count": 5
            },
            "storage": {
                "output_dir": "~/.nilsoliton_checker/families"
            },
            "analysis": {
                "default_format": "text",
                "include_gram_matrix": True
            },
            "reproduce": {
                "q_values": ["1", "2", "1/3", "7/5"],
                "max_k": 3,
                "sample_count": 1000,
                "sample_seed": 20240607,
                "coefficient_bound": 50,
                "workers": 4
            }
        }

    def get(self, key_path: str, default: Any = None) -> Any:
        """Get configuration value using dot notation (e.g., 'reproduce.max_k')"""
        value = self._config
        for key in key_path.split('.'):
            if isinstance(value, dict) and key in value:
                value = value[key]
            else:
                return default
        return value

    def get_path(self, key_path: str, default: Any = None) -> Optional[str]:
        """Get configuration path and expand user directory"""
        path = self.get(key_path, default)
        if path:
            return expand_path(path)
        return path

    def _merge_config(self, defaults: Dict[str, Any], user_config: Dict[str, Any]) -> Dict[str, Any]:
        """Merge user config with defaults, recursively"""
        merged = copy.deepcopy(defaults)
        for key, value in user_config.items():
            if key in merged and isinstance(merged[key], dict) and isinstance(value, dict):
                merged[key] = self._merge_config(merged[key], value)
            else:
                merged[key] = value
        return merged

    def _reset(self, key_path: str, value: Any):
        section, key = key_path.split('.')
        logger.warning(f"Invalid {key_path}: {self.get(key_path)!r}, using default: {value!r}")
        self._config.setdefault(section, {})[key] = value

    def _validate_config(self):
        """Validate configuration values and fix or warn about invalid values"""
        defaults = self._get_defaults()

        log_level = self.get("logging.level")
        if not isinstance(log_level, str) or log_level.upper() not in VALID_LOG_LEVELS:
            self._reset("logging.level", defaults["logging"]["level"])
        else:
            self._config["logging"]["level"] = log_level.upper()

        for key in ("max_file_size_mb", "backup_count"):
            value = self.get(f"logging.{key}")
            minimum = 1 if key == "max_file_size_mb" else 0
            if not isinstance(value, int) or value < minimum:
                self._reset(f"logging.{key}", defaults["logging"][key])

        output_format = self.get("analysis.default_format")
        if output_format not in VALID_FORMATS:
            self._reset("analysis.default_format", "text")

        if not isinstance(self.get("analysis.include_gram_matrix"), bool):
            self._reset("analysis.include_gram_matrix", True)

        q_values = self.get("reproduce.q_values")
        try:
            if not isinstance(q_values, list) or not q_values:
                raise ValidationError("q_values must be a non-empty list")
            for q in q_values:
                parse_positive_rational(str(q), "q")
            self._config["reproduce"]["q_values"] = [str(q).strip() for q in q_values]
        except ValidationError:
            self._reset("reproduce.q_values", defaults["reproduce"]["q_values"])

        if not validate_max_k(self.get("reproduce.max_k")):
            self._reset("reproduce.max_k", defaults["reproduce"]["max_k"])

        for key in ("sample_count", "coefficient_bound", "workers"):
            value = self.get(f"reproduce.{key}")
            if not isinstance(value, int) or isinstance(value, bool) or value <= 0:
                self._reset(f"reproduce.{key}", defaults["reproduce"][key])

        if not isinstance(self.get("reproduce.sample_seed"), int):
            self._reset("reproduce.sample_seed", defaults["reproduce"]["sample_seed"])
