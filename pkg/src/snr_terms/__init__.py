"""Closed-form SNR terms and secrecy rate."""
