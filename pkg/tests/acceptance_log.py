"""Collects the one-line acceptance verdicts for the terminal summary."""
LINES = []
