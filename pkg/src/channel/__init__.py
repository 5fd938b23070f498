"""Rician channel sampling package."""
