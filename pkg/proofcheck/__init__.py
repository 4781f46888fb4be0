"""Numeric checks of the analytic inequalities behind the contour-integral estimates."""
