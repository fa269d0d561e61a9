"""Command-line interface for the fluxonium array optimizer."""

from .main import app, cli_main

__all__ = ["app", "cli_main"]
