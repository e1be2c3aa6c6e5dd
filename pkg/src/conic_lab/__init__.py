"""Exact computations on arrangements of smooth plane conics."""
