"""Integration tests for radial-mfg."""
