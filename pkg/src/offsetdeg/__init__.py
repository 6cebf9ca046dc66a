"""Exact degree of the generic offset to a rational surface."""

from __future__ import annotations

__version__ = "0.1.0"
