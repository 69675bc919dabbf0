"""Test suite for graphshift."""
