"""
Tests for src.core module.
"""
