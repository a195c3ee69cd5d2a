"""Configuration file management for hyperchroma."""

import json
from pathlib import Path

from hyperchroma.config import HyperchromaConfig

ConfigValue = str | int | float


class ConfigManager:
    """Manages configuration files and merging logic."""

    HYPERCHROMA_HOME: Path = Path.home() / ".hyperchroma"
    GLOBAL_CONFIG_FILE: str = "global.config.json"
    DEFAULT_PROFILE: str = "default"

    @classmethod
    def profile_path(cls, profile: str) -> Path:
        return cls.HYPERCHROMA_HOME / "configs" / f"{profile}.json"

    @classmethod
    def load_for_profile(cls, profile: str) -> HyperchromaConfig:
        """Load merged config for a profile.

        Loads global config from ~/.hyperchroma/global.config.json, then merges
        with profile overrides from ~/.hyperchroma/configs/{profile}.json.

        Args:
            profile: Profile name

        Returns:
            Merged HyperchromaConfig instance
        """
        global_path = cls.HYPERCHROMA_HOME / cls.GLOBAL_CONFIG_FILE
        profile_path = cls.profile_path(profile)

        if global_path.exists():
            with open(global_path, encoding="utf-8") as f:
                data = json.load(f)
        else:
            data = {}

        if profile_path.exists():
            with open(profile_path, encoding="utf-8") as f:
                data.update(json.load(f))

        return HyperchromaConfig(**data) if data else HyperchromaConfig()

    @classmethod
    def save_global(cls, config: HyperchromaConfig) -> None:
        """Save global configuration.

        Args:
            config: Config instance to save
        """
        global_path = cls.HYPERCHROMA_HOME / cls.GLOBAL_CONFIG_FILE
        global_path.parent.mkdir(parents=True, exist_ok=True)

        with open(global_path, "w", encoding="utf-8") as f:
            json.dump(config.model_dump(), f, indent=2)

    @classmethod
    def save_profile_override(cls, profile: str, overrides: dict[str, ConfigValue]) -> None:
        """Save profile-specific config overrides.

        Args:
            profile: Profile name
            overrides: Dictionary of config values to override
        """
        profile_path = cls.profile_path(profile)
        profile_path.parent.mkdir(parents=True, exist_ok=True)

        with open(profile_path, "w", encoding="utf-8") as f:
            json.dump(overrides, f, indent=2)

    @classmethod
    def get_profile_override(cls, profile: str) -> dict[str, ConfigValue]:
        """Get profile-specific config overrides.

        Returns:
            Dictionary of overrides, or empty dict if no overrides exist
        """
        profile_path = cls.profile_path(profile)

        if not profile_path.exists():
            return {}

        with open(profile_path, encoding="utf-8") as f:
            return json.load(f)

    @classmethod
    def initialize_default(cls) -> None:
        """Create default global config file if it doesn't exist."""
        global_path = cls.HYPERCHROMA_HOME / cls.GLOBAL_CONFIG_FILE

        if not global_path.exists():
            cls.save_global(HyperchromaConfig())
