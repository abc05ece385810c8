"""Command line interface for border-peeling clustering."""

from .main import app, main

__all__ = ["app", "main"]
