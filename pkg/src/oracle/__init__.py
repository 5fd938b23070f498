"""Brute-force reference implementations for validating the optimizer."""
