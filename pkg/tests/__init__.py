"""Tests for kummerlab."""
