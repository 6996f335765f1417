"""Exact verification engine for q,t-deformed matrix models."""

__version__ = "0.1.0"
