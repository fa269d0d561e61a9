"""Unit tests for the fluxonium array optimizer."""
