#!/usr/bin/env python3

"""
Test configuration and fixtures for EOFP tests.

This module provides common fixtures and configuration for all tests.
"""

import os
import shutil
import tempfile
from collections.abc import Generator
from pathlib import Path

import numpy as np
import pytest

# Keep log files out of the user's home directory.
os.environ.setdefault("EOFP_LOG_DIR", tempfile.mkdtemp(prefix="eofp-test-logs-"))

from src.core.config import Config  # noqa: E402
from src.core.model_store import save_bytes, write_raw_model  # noqa: E402

TINY_RUN = """\
seed=0
epochs=3
lr=0.05
frames=80
frame_len=8
hidden=8
batch_size=8
input_snr_db=6
"""


@pytest.fixture
def temp_dir() -> Generator[Path, None, None]:
    """Create a temporary directory for testing."""
    temp_path = Path(tempfile.mkdtemp())
    try:
        yield temp_path
    finally:
        shutil.rmtree(temp_path, ignore_errors=True)


@pytest.fixture
def mock_config(temp_dir: Path, monkeypatch) -> Config:
    """Create a configuration isolated from the environment for testing."""
    for key in ("EOFP_LOG_LEVEL", "EOFP_MACHINE_OUTPUT", "EOFP_SWEEP_WORKERS"):
        monkeypatch.delenv(key, raising=False)
    config = Config()
    config.set_base_dir(temp_dir)
    config.machine_output = False
    config.sweep_workers = 1
    return config


@pytest.fixture
def mock_ui():
    """Create a mock UI adapter for testing."""
    from src.ui.adapter import MockUIAdapter

    return MockUIAdapter()


@pytest.fixture
def rng() -> np.random.Generator:
    """Seeded generator for reproducible random models."""
    return np.random.default_rng(1234)


@pytest.fixture
def sample_model(rng) -> list[np.ndarray]:
    """Small dense model: two weight matrices, two bias vectors, a few zeros."""
    w1 = rng.normal(0.0, 0.3, size=(8, 6)).astype(np.float32)
    b1 = rng.normal(0.0, 0.05, size=(6,)).astype(np.float32)
    w2 = rng.normal(0.0, 0.3, size=(6, 4)).astype(np.float32)
    b2 = np.zeros(4, dtype=np.float32)
    w1[0, 0] = 0.0
    w2[1, 2] = -0.0
    return [w1, b1, w2, b2]


@pytest.fixture
def example_model() -> list[np.ndarray]:
    """Exponents 0 and -29 plus a zero: range {0, -29, 5}."""
    return [np.array([0.0, 2.0**-29, 1.0, -0.5], dtype=np.float32)]


@pytest.fixture
def raw_model_file(temp_dir: Path, sample_model) -> Path:
    """The sample model written in the raw ingestion format."""
    path = temp_dir / "model.raw"
    save_bytes(path, write_raw_model(sample_model))
    return path


@pytest.fixture
def run_config_file(temp_dir: Path) -> Path:
    """A tiny, fast training run configuration."""
    path = temp_dir / "run.cfg"
    path.write_text(TINY_RUN + "n=12\nmode=conditional\n")
    return path


@pytest.fixture
def sweep_config_file(temp_dir: Path) -> Path:
    """A tiny sweep: two bit widths, both modes, two seeds."""
    path = temp_dir / "sweep.cfg"
    path.write_text(TINY_RUN + "bit_widths=32,9\nmodes=conditional,chop\nseeds=2\n")
    return path


@pytest.fixture
def model_service(mock_config):
    """ModelService bound to the isolated configuration."""
    from src.services import ModelService

    return ModelService(mock_config)


@pytest.fixture
def training_service(mock_config):
    """TrainingService bound to the isolated configuration."""
    from src.services import TrainingService

    return TrainingService(mock_config)
