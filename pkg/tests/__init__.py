"""Test suite for the fluxonium array optimizer."""
