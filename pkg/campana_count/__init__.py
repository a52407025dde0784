"""Campana Count - exact counts and circle-method predictions for Campana points."""

__version__ = "0.1.0"
