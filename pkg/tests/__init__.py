"""Tests for hyperchroma."""
