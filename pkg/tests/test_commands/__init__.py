"""
Tests for src.commands module.
"""
