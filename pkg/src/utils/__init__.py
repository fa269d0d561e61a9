"""Utility modules for the fluxonium array optimizer."""

from .export import export_to_csv, export_to_json, flatten_dict, format_number
from .logging import setup_logging

__all__ = [
    "setup_logging",
    "export_to_json",
    "export_to_csv",
    "flatten_dict",
    "format_number",
]
