"""Integration tests for the fluxonium array optimizer CLI."""
