"""Tests for the Schottky toolkit."""
