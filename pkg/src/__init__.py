"""Fluxonium array optimizer: charge-noise coherence versus array junction count."""

__version__ = "0.1.0"
