"""Test fixtures and sample signals."""
