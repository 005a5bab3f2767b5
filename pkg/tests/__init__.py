"""Test suite for tropfan."""
