"""Optimal evasion against a constant-velocity pursuer with a circular capture zone."""

__version__ = "0.1.0"
