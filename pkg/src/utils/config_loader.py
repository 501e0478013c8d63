#!/usr/bin/env python3
"""
Config Loader - YAML Configuration System
Search bounds, budgets and logging options with defaults, YAML and env overrides
"""

import os
import yaml
from pathlib import Path
from typing import Dict, Any, Optional
from dataclasses import dataclass, asdict

from .logger import Logger


@dataclass
class GarsideConfig:
    """
    Complete garside-germs configuration

    Features:
    - YAML file support for persistent configuration
    - Environment variable overrides (GARSIDE_*)
    - Sensible desk-scale defaults
    - Validation
    """

    # === AXIOM CHECKS ===
    g4_strategy: str = "search"  # "assume" or "search"
    g4_search_length: int = 4  # longest raw prefix z tried for zx = zy

    # === ENUMERATION ORACLE ===
    enumeration_max_len: int = 3
    show_progress: bool = False

    # === COXETER ===
    coxeter_element_guard: int = 100000  # refuse to materialize more elements

    # === DECOMPOSITION POSETS ===
    eposet_vertex_budget: int = 2000
    tietze_max_rounds: int = 200
    max_worker_threads: int = 4

    # === LOGGING & OUTPUT ===
    log_level: str = "WARNING"  # DEBUG, INFO, WARNING, ERROR
    log_to_file: bool = False
    log_file_path: str = ""

    def validate(self) -> tuple[bool, list[str]]:
        """
        Validate configuration

        Returns:
            (is_valid, error_messages)
        """
        errors = []

        if self.g4_strategy not in ("assume", "search"):
            errors.append("g4_strategy must be 'assume' or 'search'")
        if self.g4_search_length < 0:
            errors.append("g4_search_length must be non-negative")
        if self.enumeration_max_len < 0:
            errors.append("enumeration_max_len must be non-negative")
        if self.coxeter_element_guard < 1:
            errors.append("coxeter_element_guard must be at least 1")
        if self.eposet_vertex_budget < 1:
            errors.append("eposet_vertex_budget must be at least 1")
        if self.tietze_max_rounds < 0:
            errors.append("tietze_max_rounds must be non-negative")
        if self.max_worker_threads < 1:
            errors.append("max_worker_threads must be at least 1")

        valid_levels = ['DEBUG', 'INFO', 'WARNING', 'ERROR']
        if self.log_level.upper() not in valid_levels:
            errors.append(f"log_level must be one of: {', '.join(valid_levels)}")

        return (len(errors) == 0, errors)

    def to_dict(self) -> Dict[str, Any]:
        return asdict(self)


def _to_bool(value: str) -> bool:
    return value.lower() in ['true', '1', 'yes']


class ConfigLoader:
    """
    Configuration loader with YAML support

    Priority order (highest to lowest):
    1. Environment variables (GARSIDE_*)
    2. YAML configuration file
    3. Default values
    """

    DEFAULT_CONFIG_PATHS = [
        "garside_config.yaml",
        "config/garside_config.yaml",
        os.path.expanduser("~/.garside/config.yaml"),
    ]

    ENV_MAPPINGS = {
        'GARSIDE_G4_STRATEGY': 'g4_strategy',
        'GARSIDE_G4_LENGTH': ('g4_search_length', int),
        'GARSIDE_ENUM_MAX_LEN': ('enumeration_max_len', int),
        'GARSIDE_ELEMENT_GUARD': ('coxeter_element_guard', int),
        'GARSIDE_VERTEX_BUDGET': ('eposet_vertex_budget', int),
        'GARSIDE_TIETZE_ROUNDS': ('tietze_max_rounds', int),
        'GARSIDE_WORKERS': ('max_worker_threads', int),
        'GARSIDE_PROGRESS': ('show_progress', _to_bool),
        'GARSIDE_LOG_LEVEL': 'log_level',
    }

    def __init__(self, config_path: Optional[str] = None):
        self.logger = Logger("ConfigLoader")
        self.config_path = config_path
        self.config = GarsideConfig()

    def load(self) -> GarsideConfig:
        """
        Load configuration from all sources

        Returns:
            GarsideConfig instance with merged settings
        """
        self.config = GarsideConfig()

        yaml_config = self._load_yaml()
        if yaml_config:
            self._merge_yaml_config(yaml_config)

        self._apply_env_overrides()

        if self.config.log_to_file and not self.config.log_file_path:
            self.config.log_file_path = str(Path.cwd() / "logs" / "garside.log")

        return self.config

    def _find_config_file(self) -> Optional[Path]:
        """Find configuration file in default locations"""
        if self.config_path:
            path = Path(self.config_path)
            if path.exists():
                return path
            self.logger.warning(f"Config file not found: {self.config_path}")
            return None

        for path_str in self.DEFAULT_CONFIG_PATHS:
            path = Path(path_str)
            if path.exists():
                self.logger.debug(f"Found config file: {path}")
                return path

        return None

    def _load_yaml(self) -> Optional[Dict[str, Any]]:
        """Load YAML configuration file"""
        config_file = self._find_config_file()

        if not config_file:
            self.logger.debug("No YAML config file found, using defaults")
            return None

        try:
            with open(config_file, 'r', encoding='utf-8') as f:
                yaml_data = yaml.safe_load(f)

            self.logger.debug(f"📄 Loaded config from: {config_file}")
            return yaml_data if isinstance(yaml_data, dict) else None

        except yaml.YAMLError as e:
            self.logger.error(f"Invalid YAML syntax in {config_file}: {e}")
            return None
        except OSError as e:
            self.logger.error(f"Failed to load config file {config_file}: {e}")
            return None

    def _merge_yaml_config(self, yaml_data: Dict[str, Any]) -> None:
        """Merge YAML data into config object"""
        for key, value in yaml_data.items():
            if hasattr(self.config, key):
                setattr(self.config, key, value)
            else:
                self.logger.warning(f"Unknown config key in YAML: {key}")

    def _apply_env_overrides(self) -> None:
        """Apply environment variable overrides"""
        for env_var, config_attr in self.ENV_MAPPINGS.items():
            value = os.environ.get(env_var)
            if not value:
                continue
            if isinstance(config_attr, tuple):
                attr_name, converter = config_attr
                try:
                    setattr(self.config, attr_name, converter(value))
                    self.logger.debug(f"Applied env override: {env_var} -> {attr_name}")
                except ValueError as e:
                    self.logger.warning(f"Failed to convert {env_var}: {e}")
            else:
                setattr(self.config, config_attr, value)
                self.logger.debug(f"Applied env override: {env_var} -> {config_attr}")

    def save_template(self, output_path: str = "garside_config.yaml") -> bool:
        """
        Save a template configuration file with all options documented

        Args:
            output_path: Where to save the template

        Returns:
            True if successful
        """
        try:
            output_file = Path(output_path)
            output_file.parent.mkdir(parents=True, exist_ok=True)
            output_file.write_text(CONFIG_TEMPLATE, encoding='utf-8')
            self.logger.success(f"Saved config template: {output_path}")
            return True

        except OSError as e:
            self.logger.error(f"Failed to save config template: {e}")
            return False

    def validate_and_report(self) -> bool:
        """
        Validate configuration and report any errors

        Returns:
            True if valid
        """
        is_valid, errors = self.config.validate()

        if not is_valid:
            self.logger.error("Configuration validation failed:")
            for error in errors:
                self.logger.error(f"   - {error}")
            return False

        self.logger.debug("Configuration validated successfully")
        return True


CONFIG_TEMPLATE = """# garside-germs configuration
# Every key is optional; environment variables GARSIDE_* override this file.

# === AXIOM CHECKS ===
g4_strategy: "search"        # "assume" trusts left cancellation, "search" looks for zx = zy
g4_search_length: 4          # longest prefix z tried by the search

# === ENUMERATION ORACLE ===
enumeration_max_len: 3       # default ν bound for oracle enumerations
show_progress: false         # tqdm bars on stderr

# === COXETER ===
coxeter_element_guard: 100000

# === DECOMPOSITION POSETS ===
eposet_vertex_budget: 2000   # TooLarge beyond this many decompositions
tietze_max_rounds: 200       # bounded π₁ reduction attempts
max_worker_threads: 4        # batch E(g) checks

# === LOGGING & OUTPUT ===
log_level: "WARNING"         # DEBUG, INFO, WARNING, ERROR
log_to_file: false
log_file_path: "./logs/garside.log"
"""


# === HELPER FUNCTIONS ===

def load_config(config_path: Optional[str] = None) -> GarsideConfig:
    """
    Convenience function to load configuration

    Args:
        config_path: Optional path to config file

    Returns:
        GarsideConfig instance
    """
    loader = ConfigLoader(config_path)
    config = loader.load()
    loader.validate_and_report()
    return config


def create_config_template(output_path: str = "garside_config.yaml") -> bool:
    """
    Create a configuration template file

    Args:
        output_path: Where to save the template

    Returns:
        True if successful
    """
    loader = ConfigLoader()
    return loader.save_template(output_path)
