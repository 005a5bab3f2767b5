"""Configuration management for the tropfan CLI."""

import json
import logging
import os
from pathlib import Path
from typing import Optional

from pydantic import ValidationError

from .exceptions import ConfigError
from .models import TropfanSettings
from .utils import get_tropfan_config_path

logger = logging.getLogger(__name__)

THREADS_ENV = "TROPFAN_THREADS"


class ConfigManager:
    """Loads and saves tropfan settings, with environment overrides."""

    def __init__(self, config_path: Optional[Path] = None):
        self.config_path = config_path or get_tropfan_config_path()
        self._config: Optional[TropfanSettings] = None

    def load_config(self) -> TropfanSettings:
        """Load settings from disk, falling back to defaults if absent."""
        if not self.config_path.exists():
            logger.debug("No configuration file found, using defaults")
            data = {}
        else:
            try:
                with open(self.config_path, "r", encoding="utf-8") as f:
                    data = json.load(f)
            except (OSError, json.JSONDecodeError) as e:
                raise ConfigError(
                    f"Failed to load configuration from {self.config_path}: {e}"
                )

        threads = os.environ.get(THREADS_ENV)
        if threads:
            try:
                data["threads"] = int(threads)
            except ValueError:
                raise ConfigError(f"{THREADS_ENV} must be an integer, got '{threads}'")

        try:
            self._config = TropfanSettings(**data)
        except ValidationError as e:
            raise ConfigError(f"Invalid configuration in {self.config_path}: {e}")
        logger.debug(f"Settings: {self._config}")
        return self._config

    def save_config(self, config: Optional[TropfanSettings] = None) -> None:
        """Save settings to disk."""
        config_to_save = config or self._config

        if config_to_save is None:
            raise ConfigError("No configuration to save")

        self.config_path.parent.mkdir(parents=True, exist_ok=True)

        try:
            config_dict = config_to_save.model_dump(mode="json")

            with open(self.config_path, "w", encoding="utf-8") as f:
                json.dump(config_dict, f, indent=2, ensure_ascii=False)

            logger.debug(f"Saved configuration to {self.config_path}")
            self._config = config_to_save

        except OSError as e:
            raise ConfigError(
                f"Failed to save configuration to {self.config_path}: {e}"
            )

    @property
    def config(self) -> TropfanSettings:
        """Get the current settings, loading if necessary."""
        if self._config is None:
            self._config = self.load_config()
        return self._config
