#!/usr/bin/env python3

"""
Small dense regression network on torch

Weights and biases cross the quantizer boundary as float32 numpy arrays
in layer order ([W1, b1, W2, b2, ...], weights shaped (out, in)), so the
mantissa quantizer can act on them directly between epochs.
"""

from collections.abc import Sequence
from enum import Enum

import numpy as np
import torch
from torch import nn

from ..exceptions import ValidationError


class Activation(str, Enum):
    TANH = "tanh"
    RELU = "relu"
    LINEAR = "linear"

    def module(self) -> nn.Module:
        if self is Activation.TANH:
            return nn.Tanh()
        if self is Activation.RELU:
            return nn.ReLU()
        return nn.Identity()


def configure_torch() -> None:
    """Deterministic single-threaded kernels, so a seed fixes the whole run."""
    torch.use_deterministic_algorithms(True)
    if torch.get_num_threads() != 1:
        torch.set_num_threads(1)


class ToyNetwork(nn.Module):
    """Feed-forward stack of nn.Linear layers, each followed by its activation."""

    def __init__(self, sizes: Sequence[int], activations: Sequence[Activation]):
        super().__init__()
        if len(sizes) < 2:
            raise ValidationError("network needs at least one layer")
        if len(activations) != len(sizes) - 1:
            raise ValidationError(f"{len(sizes) - 1} layers need as many activations, got {len(activations)}")
        self.activations = [Activation(a) for a in activations]
        self.linear_layers = nn.ModuleList(
            nn.Linear(fan_in, fan_out) for fan_in, fan_out in zip(sizes, sizes[1:], strict=False)
        )
        stack: list[nn.Module] = []
        for layer, activation in zip(self.linear_layers, self.activations, strict=True):
            stack.extend([layer, activation.module()])
        self.stack = nn.Sequential(*stack)

    @classmethod
    def build(cls, frame_len: int, hidden: int, rng: np.random.Generator) -> "ToyNetwork":
        """frame_len -> hidden -> hidden -> frame_len, tanh hidden, linear output."""
        sizes = [frame_len, hidden, hidden, frame_len]
        network = cls(sizes, [Activation.TANH, Activation.TANH, Activation.LINEAR])
        params = []
        for fan_in, fan_out in zip(sizes, sizes[1:], strict=False):
            limit = np.sqrt(6.0 / (fan_in + fan_out))
            params.append(rng.uniform(-limit, limit, size=(fan_out, fan_in)))
            params.append(np.zeros(fan_out))
        network.load_parameters(params)
        return network

    @classmethod
    def identity(cls, frame_len: int) -> "ToyNetwork":
        return cls.from_parameters([np.eye(frame_len), np.zeros(frame_len)], [Activation.LINEAR])

    @classmethod
    def from_parameters(
        cls, params: Sequence[np.ndarray], activations: Sequence[Activation] | None = None
    ) -> "ToyNetwork":
        """Rebuild a network from [W1, b1, ...]; default activations follow ``build``."""
        if not params or len(params) % 2:
            raise ValidationError("parameters must come in (weights, biases) pairs")
        weights = [np.asarray(w) for w in params[::2]]
        if any(w.ndim != 2 for w in weights):
            raise ValidationError("weights must be 2-D (out, in)")
        for previous, current in zip(weights, weights[1:], strict=False):
            if previous.shape[0] != current.shape[1]:
                raise ValidationError("consecutive layer widths do not match")
        count = len(weights)
        if activations is None:
            activations = [Activation.TANH] * (count - 1) + [Activation.LINEAR]
        network = cls([weights[0].shape[1]] + [w.shape[0] for w in weights], activations)
        network.load_parameters(params)
        return network

    @property
    def input_size(self) -> int:
        return int(self.linear_layers[0].in_features)

    @property
    def output_size(self) -> int:
        return int(self.linear_layers[-1].out_features)

    def forward(self, x: torch.Tensor) -> torch.Tensor:
        return self.stack(x)

    def predict(self, x: np.ndarray) -> np.ndarray:
        """Run float32 frames through the network without tracking gradients."""
        frames = np.ascontiguousarray(x, dtype=np.float32)
        if frames.ndim != 2 or frames.shape[1] != self.input_size:
            raise ValidationError(f"input shape {frames.shape} does not match network input {self.input_size}")
        with torch.no_grad():
            return self(torch.from_numpy(frames)).numpy()

    def export_parameters(self) -> list[np.ndarray]:
        """Weights and biases in layer order as float32 copies: [W1, b1, W2, b2, ...]."""
        params = []
        for layer in self.linear_layers:
            params.append(layer.weight.detach().numpy().copy())
            params.append(layer.bias.detach().numpy().copy())
        return params

    def load_parameters(self, params: Sequence[np.ndarray]) -> None:
        """
        Overwrite every weight and bias.

        Raises:
            ValidationError: wrong tensor count or shape (nothing is written)
        """
        expected = 2 * len(self.linear_layers)
        if len(params) != expected:
            raise ValidationError(f"expected {expected} tensors, got {len(params)}")
        arrays = [np.array(p, dtype=np.float32) for p in params]
        for i, layer in enumerate(self.linear_layers):
            if arrays[2 * i].shape != tuple(layer.weight.shape) or arrays[2 * i + 1].shape != tuple(layer.bias.shape):
                raise ValidationError(f"parameter shapes of layer {i} do not match")
        with torch.no_grad():
            for i, layer in enumerate(self.linear_layers):
                layer.weight.copy_(torch.from_numpy(arrays[2 * i]))
                layer.bias.copy_(torch.from_numpy(arrays[2 * i + 1]))

    def parameter_count(self) -> int:
        return sum(p.numel() for p in self.parameters())

    def all_finite(self) -> bool:
        return all(bool(torch.isfinite(p).all()) for p in self.parameters())
