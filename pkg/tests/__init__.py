"""Tests for the fanograph package."""
