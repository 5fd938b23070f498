"""Seeded Monte Carlo parameter sweeps."""
