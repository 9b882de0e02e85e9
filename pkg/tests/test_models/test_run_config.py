#!/usr/bin/env python3

"""
Tests for src.models.run_config module.
"""

import pytest

from src.exceptions import ConfigurationError
from src.models.quant import QuantMode, QuantSpec
from src.models.run_config import DEFAULT_BIT_WIDTHS, SweepConfig, TrainRunConfig, load_run_config


def _write(temp_dir, text, name="run.cfg"):
    path = temp_dir / name
    path.write_text(text)
    return path


class TestTrainRunConfig:
    """Test single-run configuration files."""

    def test_load(self, run_config_file):
        """Test a full configuration file parses."""
        run = load_run_config(run_config_file)

        assert run.seed == 0
        assert run.epochs == 3
        assert run.lr == 0.05
        assert run.frames == 80
        assert run.frame_len == 8
        assert run.n == 12
        assert run.quant_spec == QuantSpec(n=12, mode=QuantMode.CONDITIONAL)

    def test_defaults(self, temp_dir):
        """Test omitted keys take documented defaults."""
        run = load_run_config(_write(temp_dir, "seed=3\n"))

        assert run.epochs == 30
        assert run.n is None
        assert (run.lr, run.batch_size, run.input_snr_db) == (0.5, 4, 3.0)
        assert (run.frames, run.frame_len, run.hidden) == (2000, 32, 64)
        assert run.quant_spec is None
        assert run.mode is QuantMode.CONDITIONAL

    @pytest.mark.parametrize("value", ["", "none", "None"])
    def test_blank_n_trains_unquantized(self, temp_dir, value):
        """Test an empty or 'none' n disables quantization."""
        run = load_run_config(_write(temp_dir, f"n={value}\n"))
        assert run.n is None

    def test_comments_and_case(self, temp_dir):
        """Test comments are skipped and keys and modes are case-insensitive."""
        run = load_run_config(_write(temp_dir, "# tiny run\nEPOCHS=2\nmode=CHOP\nn=23\n"))

        assert run.epochs == 2
        assert run.quant_spec == QuantSpec(n=23, mode=QuantMode.CHOP)

    def test_inf_snr_is_noise_free(self, temp_dir):
        """Test input_snr_db=inf selects the noise-free dataset."""
        run = load_run_config(_write(temp_dir, "input_snr_db=inf\n"))
        assert run.dataset.noise_free

    @pytest.mark.parametrize(
        "text",
        ["unknown_key=1\n", "n=24\n", "epochs=0\n", "lr=-1\n", "mode=nearest\n", "n=abc\n", "epochs\n"],
    )
    def test_invalid(self, temp_dir, text):
        """Test unknown keys, bad values and keys without values are configuration errors."""
        with pytest.raises(ConfigurationError) as exc_info:
            load_run_config(_write(temp_dir, text))
        assert exc_info.value.exit_code == 2

    def test_missing_file(self, temp_dir):
        """Test a missing file is a configuration error."""
        with pytest.raises(ConfigurationError):
            load_run_config(temp_dir / "absent.cfg")


class TestSweepConfig:
    """Test sweep configuration files."""

    def test_load(self, sweep_config_file):
        """Test list values and a seed count parse."""
        config = load_run_config(sweep_config_file, SweepConfig)

        assert config.bit_widths == [32, 9]
        assert config.modes == [QuantMode.CONDITIONAL, QuantMode.CHOP]
        assert config.seeds == [0, 1]

    def test_defaults(self, temp_dir):
        """Test the default grid."""
        config = load_run_config(_write(temp_dir, "epochs=1\n"), SweepConfig)

        assert config.bit_widths == DEFAULT_BIT_WIDTHS
        assert config.seeds == [0, 1, 2, 3, 4]
        assert config.workers == 1
        assert not config.post_training

    def test_post_training_flag(self, temp_dir):
        """Test post_training parses as a boolean and stays out of single runs."""
        config = load_run_config(_write(temp_dir, "post_training=true\n"), SweepConfig)

        assert config.post_training
        assert "post_training" not in config.run_for(9, QuantMode.CHOP, 0).model_dump()

    def test_seed_count_starts_at_seed(self, temp_dir):
        """Test a count of seeds starts from the base seed."""
        config = load_run_config(_write(temp_dir, "seed=10\nseeds=3\n"), SweepConfig)
        assert config.seeds == [10, 11, 12]

    def test_explicit_seed_list(self, temp_dir):
        """Test comma lists are taken literally."""
        config = load_run_config(_write(temp_dir, "seeds=4, 9\n"), SweepConfig)
        assert config.seeds == [4, 9]

    @pytest.mark.parametrize("text", ["bit_widths=8\n", "bit_widths=33\n", "seeds=0\n", "modes=round\n"])
    def test_invalid(self, temp_dir, text):
        """Test bit widths outside [9, 32], empty seed counts and unknown modes fail."""
        with pytest.raises(ConfigurationError):
            load_run_config(_write(temp_dir, text), SweepConfig)

    def test_run_for(self, sweep_config_file):
        """Test a sweep cell carries the shared settings and its own n, mode and seed."""
        config = load_run_config(sweep_config_file, SweepConfig)
        run = config.run_for(9, QuantMode.CHOP, 1)

        assert isinstance(run, TrainRunConfig)
        assert run.n == 23
        assert run.mode is QuantMode.CHOP
        assert run.seed == 1
        assert run.frame_len == config.frame_len
