"""Test package for radial-mfg."""
