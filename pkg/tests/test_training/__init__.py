"""
Tests for src.training module.
"""
