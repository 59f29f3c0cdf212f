"""Tests for quasisolvable-spectra."""
