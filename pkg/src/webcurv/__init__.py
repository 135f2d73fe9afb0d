"""Exact toolkit for planar web geometry."""

__version__ = "0.1.0"
