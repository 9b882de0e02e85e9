"""
Tests for the EOFP toolkit
"""
