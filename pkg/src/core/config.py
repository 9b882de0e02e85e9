#!/usr/bin/env python3

"""
Configuration management for the EOFP toolkit

This module provides a Config class that eliminates global state
and provides dependency injection for application settings. Values
come from defaults, an optional eofp.json next to the project, and
EOFP_* environment variables, in that order.
"""

import json
import os
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any


@dataclass
class Config:
    """
    Configuration class that encapsulates application settings.
    """

    # Core paths
    base_dir: Path = field(default_factory=lambda: Path.cwd())
    config_file: Path | None = None

    # Logging
    log_level: str = "INFO"

    # Output settings
    machine_output: bool = False
    histogram_bar_width: int = 40
    packed_suffix: str = ".eofp"
    raw_suffix: str = ".raw"
    history_suffix: str = ".history.csv"
    sweep_suffix: str = ".sweep.csv"

    # Sweep execution
    sweep_workers: int = 1

    def __post_init__(self):
        """Initialize configuration after object creation."""
        self._load_config_file()
        self._apply_environment()

    def _load_config_file(self) -> None:
        """Load configuration from eofp.json file."""
        try:
            config_path = Path(__file__).parent.parent.parent / "eofp.json"
            if config_path.exists():
                with open(config_path, encoding="utf-8") as f:
                    config_data = json.load(f)
                    self._apply_config_data(config_data)
                    self.config_file = config_path
        except (FileNotFoundError, json.JSONDecodeError):
            # Use defaults if config file doesn't exist or is invalid
            pass

    def _apply_config_data(self, config_data: dict[str, Any]) -> None:
        """Apply configuration data from file."""
        if "logging" in config_data:
            self.log_level = config_data["logging"].get("level", self.log_level)

        if "output" in config_data:
            output = config_data["output"]
            self.machine_output = output.get("machine", self.machine_output)
            self.histogram_bar_width = output.get("histogram_bar_width", self.histogram_bar_width)
            self.packed_suffix = output.get("packed_suffix", self.packed_suffix)
            self.raw_suffix = output.get("raw_suffix", self.raw_suffix)
            self.history_suffix = output.get("history_suffix", self.history_suffix)
            self.sweep_suffix = output.get("sweep_suffix", self.sweep_suffix)

        if "sweep" in config_data:
            self.sweep_workers = config_data["sweep"].get("workers", self.sweep_workers)

    def _apply_environment(self) -> None:
        """Apply EOFP_* environment overrides."""
        self.log_level = os.getenv("EOFP_LOG_LEVEL", self.log_level)
        if os.getenv("EOFP_MACHINE_OUTPUT", "").lower() in ("1", "true", "yes"):
            self.machine_output = True
        workers = os.getenv("EOFP_SWEEP_WORKERS")
        if workers and workers.isdigit() and int(workers) > 0:
            self.sweep_workers = int(workers)

    def set_base_dir(self, path: Path) -> None:
        """Set the base directory for relative output paths."""
        self.base_dir = path.resolve()

    def default_output(self, source: Path, suffix: str) -> Path:
        """Output path next to ``source`` with its suffix replaced."""
        source = Path(source)
        if not source.is_absolute():
            source = self.base_dir / source
        return source.with_name(source.stem + suffix)
