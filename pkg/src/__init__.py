"""
EOFP - exponent-only floating point quantization toolkit

Mantissa and exponent quantization of single-precision model parameters,
a packed container format, and a small quantization-aware training harness.
"""

__version__ = "0.1.0"
