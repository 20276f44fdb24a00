"""Test suite for loop_factor."""
