"""Tests for Campana Count."""
