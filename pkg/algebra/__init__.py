"""Symbolic graph-factor algebra: coefficients, factor expressions, reductions and count expansions."""
