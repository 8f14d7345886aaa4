"""Tests for fnlie."""
