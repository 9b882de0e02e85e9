"""
Tests for src.services module.
"""
