"""Unit tests for radial-mfg."""
