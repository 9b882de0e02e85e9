#!/usr/bin/env python3

"""
Signal metrics for the denoising task
"""

import numpy as np

# Reported when the estimate matches the reference exactly.
SNR_CAP_DB = 100.0


def mse(reference: np.ndarray, estimate: np.ndarray) -> float:
    """Mean squared error over all elements."""
    diff = np.asarray(estimate, dtype=np.float64) - np.asarray(reference, dtype=np.float64)
    return float(np.mean(diff**2))


def snr_db(reference: np.ndarray, estimate: np.ndarray, cap: float = SNR_CAP_DB) -> float:
    """10 log10(signal power / error power), capped at ``cap``."""
    reference = np.asarray(reference, dtype=np.float64)
    error = np.asarray(estimate, dtype=np.float64) - reference
    signal_power = float(np.sum(reference**2))
    error_power = float(np.sum(error**2))
    if error_power == 0.0:
        return cap
    if signal_power == 0.0:
        return -cap
    return min(cap, 10.0 * float(np.log10(signal_power / error_power)))
