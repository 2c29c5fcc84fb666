"""Interdisciplinarity indicators for citation networks."""

__version__ = "0.1.0"
