"""Moment estimation, variance predictions and normality diagnostics."""
