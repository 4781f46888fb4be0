"""Graphs, multigraphs and small-graph combinatorics."""
