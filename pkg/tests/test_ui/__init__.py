"""
Tests for src.ui module.
"""
